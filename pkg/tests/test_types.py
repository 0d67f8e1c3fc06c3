import random

import pytest

from initsyn.languages import get_language, get_translation
from initsyn.objtypes import (
    ObjType,
    eval_type_expr,
    ground_types,
    translate_type,
    translate_type_expr,
)
from initsyn.signatures import TApp, TVar
from initsyn.translate import identity_translation

from oracles import gg_prop

NAT, BOOL, BOT = ObjType("Nat"), ObjType("Bool"), ObjType("bot")


def arr(a, b):
    return ObjType("arr", (a, b))


def imp(a, b):
    return ObjType("impl", (a, b))


def test_eval_type_expr():
    e = TApp("arr", (TVar(1), TVar(2)))
    assert eval_type_expr([NAT, BOOL], e) == arr(NAT, BOOL)
    assert eval_type_expr([NAT], TApp("Bool")) == BOOL
    nested = TApp("arr", (TApp("arr", (TVar(1), TVar(1))), TVar(2)))
    assert eval_type_expr([BOOL, NAT], nested) == arr(arr(BOOL, BOOL), NAT)


def test_eval_out_of_range():
    with pytest.raises(ValueError):
        eval_type_expr([], TVar(1))


def test_godel_gentzen_spot_values():
    g = get_translation("cpc2ipc-godel-gentzen").type_map
    p, q = ObjType("p"), ObjType("q")
    assert translate_type(g, p) == imp(imp(p, BOT), BOT)
    pg, qg = translate_type(g, p), translate_type(g, q)
    assert translate_type(g, ObjType("and", (p, q))) == ObjType("and", (pg, qg))
    assert translate_type(g, ObjType("or", (p, q))) == imp(
        ObjType("and", (imp(pg, BOT), imp(qg, BOT))), BOT
    )
    assert translate_type(g, BOT) == imp(imp(BOT, BOT), BOT)


def test_constant_type_map_collapses_everything():
    g = get_translation("pcf2ulc-turing").type_map
    star = ObjType("*")
    assert translate_type(g, NAT) == star
    assert translate_type(g, arr(arr(NAT, BOOL), NAT)) == star


def test_translate_type_expr_clauses():
    g = get_translation("cpc2ipc-godel-gentzen").type_map
    bot = TApp("bot")
    got = translate_type_expr(g, TApp("or", (TVar(1), TVar(2))))
    want = TApp(
        "impl",
        (
            TApp(
                "and",
                (TApp("impl", (TVar(1), bot)), TApp("impl", (TVar(2), bot))),
            ),
            bot,
        ),
    )
    assert got == want
    assert translate_type_expr(g, TVar(1)) == TVar(1)
    # hand-applied clauses with bot mapped to its double negation
    nn_bot = TApp("impl", (TApp("impl", (bot, bot)), bot))
    assert translate_type_expr(g, TApp("impl", (TVar(1), bot))) == TApp(
        "impl", (TVar(1), nn_bot)
    )


def _random_type(rng, pool, depth):
    if depth == 0 or rng.random() < 0.3:
        return rng.choice(pool)
    name = rng.choice(["and", "or", "impl"])
    return ObjType(
        name, (_random_type(rng, pool, depth - 1), _random_type(rng, pool, depth - 1))
    )


def test_gg_agrees_with_direct_recursion_on_random_propositions():
    g = get_translation("cpc2ipc-godel-gentzen").type_map
    rng = random.Random(11)
    leaves = [ObjType(n) for n in ("p", "q", "r", "top", "bot")]
    for _ in range(500):
        t = _random_type(rng, leaves, 4)
        assert translate_type(g, t) == gg_prop(t)


def test_homomorphism_law_on_random_types():
    g = get_translation("cpc2ipc-godel-gentzen").type_map
    rng = random.Random(12)
    leaves = [ObjType(n) for n in ("p", "q", "r", "top", "bot")]
    for _ in range(300):
        t = _random_type(rng, leaves, 3)
        translated_children = tuple(translate_type(g, a) for a in t.args)
        assert translate_type(g, t) == eval_type_expr(
            translated_children, g.templates[t.name]
        )


def _random_expr(rng, sig_constructors, degree, depth):
    if depth == 0 or (degree and rng.random() < 0.35):
        if degree and rng.random() < 0.7:
            return TVar(rng.randint(1, degree))
        name, count = rng.choice(
            [(n, c) for n, c in sig_constructors.items() if c == 0]
        )
        return TApp(name)
    name, count = rng.choice(list(sig_constructors.items()))
    return TApp(
        name,
        tuple(
            _random_expr(rng, sig_constructors, degree, depth - 1)
            for _ in range(count)
        ),
    )


def test_commutation_square_on_random_open_expressions():
    g = get_translation("cpc2ipc-godel-gentzen").type_map
    rng = random.Random(13)
    leaves = [ObjType(n) for n in ("p", "q", "top", "bot")]
    constructors = g.source.constructors
    for _ in range(300):
        degree = rng.randint(1, 3)
        env = [_random_type(rng, leaves, 2) for _ in range(degree)]
        e = _random_expr(rng, constructors, degree, 3)
        lhs = eval_type_expr(
            [translate_type(g, t) for t in env], translate_type_expr(g, e)
        )
        rhs = translate_type(g, eval_type_expr(env, e))
        assert lhs == rhs


def test_identity_translation_is_identity_on_types():
    cpc = get_language("CPC")
    ident = identity_translation(cpc).type_map
    for t in ground_types(cpc.all_types, 2):
        assert translate_type(ident, t) == t
