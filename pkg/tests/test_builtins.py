import importlib.resources
import random

import pytest

from initsyn.languages import (
    curry_combinator,
    get_language,
    get_translation,
    list_builtins,
    turing_combinator,
)
from initsyn.laws import GenConfig, _case_term
from initsyn.objtypes import ObjType, translate_type
from initsyn.signatures import TApp, TVar, TypedSignature, TypeSignature, validate_signature
from initsyn.surface import (
    parse_signature,
    parse_translation,
    print_signature,
    print_term,
    print_translation,
)
from initsyn.terms import Con, Var, infer
from initsyn.translate import retype_context, translate_term, validate_translation

THETA_PAPER = "Abs (Abs (1 @ (2 @ 2 @ 1))) @ Abs (Abs (1 @ (2 @ 2 @ 1)))"
Y_PAPER = "Abs (Abs (2 @ (1 @ 1)) @ Abs (2 @ (1 @ 1)))"


def test_pcf_rec_arity_shape():
    rec = get_language("PCF").arity("rec")
    assert rec.degree == 1
    assert rec.result == TVar(1)
    assert len(rec.args) == 1
    assert rec.args[0].binders == ()
    assert rec.args[0].body == TApp("arr", (TVar(1), TVar(1)))


def test_ipc_is_cpc_without_excluded_middle():
    cpc, ipc = get_language("CPC"), get_language("IPC")
    assert len(ipc.terms) == len(cpc.terms) - 1
    assert ipc.arity("EM") is None and cpc.arity("EM") is not None


def test_cpc_or_elimination_shape():
    ore = get_language("CPC").arity("orE")
    assert ore.degree == 3
    assert len(ore.args) == 3
    assert [len(s.binders) for s in ore.args] == [0, 1, 1]


def test_ulc_shape():
    ulc = get_language("ULC")
    assert ulc.types.constructors == {"*": 0}
    assert [ar.name for ar in ulc.terms] == ["abs", "app"]
    assert all(ar.degree == 0 for ar in ulc.terms)


def test_every_builtin_validates():
    languages, translations = list_builtins()
    for name in languages:
        assert validate_signature(get_language(name)).ok
    for name in translations:
        assert validate_translation(get_translation(name)).ok


def test_combinators_print_like_the_paper():
    ulc = get_language("ULC")
    assert print_term(ulc, (), turing_combinator(), style="paper") == THETA_PAPER
    assert print_term(ulc, (), curry_combinator(), style="paper") == Y_PAPER
    assert get_translation("pcf2ulc-turing").macros["Theta"] == turing_combinator()
    assert get_translation("pcf2ulc-curry").macros["Y"] == curry_combinator()


def test_em_template_typechecks_at_strict_image():
    gg = get_translation("cpc2ipc-godel-gentzen")
    cpc, ipc = gg.source, gg.target
    for atom in ("p", "q"):
        a = ObjType(atom)
        term = Con("EM", None, (a,), ())
        out = translate_term(gg, (), term)
        want = translate_type(gg.type_map, infer(cpc, (), term))
        assert infer(ipc, (), out) == want


def test_list_builtins_contents_and_determinism():
    languages, translations = list_builtins()
    assert languages == ("CPC", "IPC", "PCF", "STLC", "ULC")
    assert translations == (
        "cpc2ipc-godel-gentzen",
        "pcf2ulc-curry",
        "pcf2ulc-turing",
    )
    assert list_builtins() == (languages, translations)


def test_unknown_names_raise():
    with pytest.raises(KeyError):
        get_language("XYZ")
    with pytest.raises(KeyError):
        get_translation("XYZ")


def _pcf_without_rec() -> TypedSignature:
    pcf = get_language("PCF")
    return TypedSignature(
        types=pcf.types,
        terms=tuple(ar for ar in pcf.terms if ar.name != "rec"),
        atoms=pcf.atoms,
    )


def test_turing_and_curry_agree_away_from_rec():
    turing = get_translation("pcf2ulc-turing")
    curry = get_translation("pcf2ulc-curry")
    norec = _pcf_without_rec()
    cfg = GenConfig(seed=8, cases=1)
    rng = random.Random(8)
    for _ in range(300):
        ctx, term = _case_term(norec, cfg, rng)
        assert translate_term(turing, ctx, term) == translate_term(curry, ctx, term)


def test_turing_and_curry_differ_on_rec():
    turing = get_translation("pcf2ulc-turing")
    curry = get_translation("pcf2ulc-curry")
    nat = ObjType("Nat")
    term = Con("rec", None, (nat,), (Con("abs", None, (nat, nat), (Var(0),)),))
    assert translate_term(turing, (), term) != translate_term(curry, (), term)


def test_shipped_files_match_programmatic_builtins():
    data = importlib.resources.files("initsyn") / "data"
    languages, translations = list_builtins()
    for name in languages:
        text = (data / f"{name}.sig").read_text(encoding="utf-8")
        sig = get_language(name)
        assert text == print_signature(sig)
        assert parse_signature(text) == sig
    for name in translations:
        text = (data / f"{name}.xlat").read_text(encoding="utf-8")
        x = get_translation(name)
        assert text == print_translation(x)
        assert parse_translation(text, x.source, x.target) == x
