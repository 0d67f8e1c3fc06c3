"""Ground types and type translations.

Ground types are the trees freely generated by a type signature.  A type
translation gives, for every source constructor, a target type expression
in the constructor's parameters; extending it over whole trees by
structural recursion is the unique homomorphism between the two freely
generated type sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .signatures import TApp, TVar, TypeExpr, TypeSignature, min_degree


@dataclass(frozen=True, slots=True)
class ObjType:
    """A ground type: constructor name plus child types."""

    name: str
    args: tuple["ObjType", ...] = ()

    def __str__(self) -> str:
        if not self.args:
            return self.name
        return f"{self.name}({','.join(str(a) for a in self.args)})"


def type_key(t: ObjType) -> tuple:
    """Sort key: lexicographic on constructor name, then children."""
    return (t.name, tuple(type_key(a) for a in t.args))


def subterms(t: ObjType) -> list[ObjType]:
    """All subtrees of ``t``, including ``t`` itself."""
    out = [t]
    for a in t.args:
        out.extend(subterms(a))
    return out


def eval_type_expr(env: Sequence[ObjType], e: TypeExpr) -> ObjType:
    """Evaluate an open type expression: $k becomes ``env[k-1]``."""
    match e:
        case TVar(index=k):
            if not 1 <= k <= len(env):
                raise ValueError(
                    f"type variable ${k} out of range for environment of length {len(env)}"
                )
            return env[k - 1]
        case TApp(name=name, args=args):
            return ObjType(name, tuple(eval_type_expr(env, a) for a in args))
    raise TypeError(f"not a type expression: {e!r}")


@dataclass(frozen=True)
class TypeTranslation:
    """Per-constructor target templates presenting a type homomorphism.

    ``templates[c]`` is a target type expression whose variables $1..$m
    stand for the translated arguments of the source constructor ``c``
    (m being the declared argument count of ``c``).
    """

    source: TypeSignature
    target: TypeSignature
    templates: dict[str, TypeExpr]

    def check(self) -> list[str]:
        """Structural problems with the template table, if any."""
        out = []
        for name, count in self.source.constructors.items():
            tpl = self.templates.get(name)
            if tpl is None:
                out.append(f"no type template for '{name}'")
                continue
            if min_degree(tpl) > count:
                out.append(
                    f"type template for '{name}' uses ${min_degree(tpl)} "
                    f"but '{name}' has {count} arguments"
                )
        for name in self.templates:
            if name not in self.source.constructors:
                out.append(f"type template for unknown constructor '{name}'")
        return out


def translate_type(g: TypeTranslation, t: ObjType) -> ObjType:
    """Apply the homomorphism determined by ``g`` to a ground type."""
    translated = tuple(translate_type(g, a) for a in t.args)
    return eval_type_expr(translated, g.templates[t.name])


def subst_type_expr(e: TypeExpr, args: Sequence[TypeExpr]) -> TypeExpr:
    """Replace $k in ``e`` by ``args[k-1]``."""
    match e:
        case TVar(index=k):
            return args[k - 1]
        case TApp(name=name, args=sub):
            return TApp(name, tuple(subst_type_expr(a, args) for a in sub))
    raise TypeError(f"not a type expression: {e!r}")


def translate_type_expr(g: TypeTranslation, e: TypeExpr) -> TypeExpr:
    """Extend the type translation to open expressions.

    Variables stay themselves, so that evaluating the result at translated
    parameters agrees with translating the evaluation (the translation and
    evaluation square commutes).
    """
    match e:
        case TVar():
            return e
        case TApp(name=name, args=args):
            translated = [translate_type_expr(g, a) for a in args]
            return subst_type_expr(g.templates[name], translated)
    raise TypeError(f"not a type expression: {e!r}")


def identity_type_translation(ts: TypeSignature) -> TypeTranslation:
    templates: dict[str, TypeExpr] = {
        name: TApp(name, tuple(TVar(i + 1) for i in range(count)))
        for name, count in ts.constructors.items()
    }
    return TypeTranslation(ts, ts, templates)


def ground_types(ts: TypeSignature, max_depth: int = 2) -> list[ObjType]:
    """All ground types of height up to ``max_depth``, sorted canonically.

    Used as an instantiation pool by generators and by the translation
    validator's unityped-target test; the full set is infinite as soon as
    a constructor of positive arity exists.
    """
    layer: list[ObjType] = []
    for _ in range(max_depth):
        pool = list(layer)
        layer = []
        for name, count in ts.constructors.items():
            if count == 0:
                layer.append(ObjType(name))
            else:
                layer.extend(
                    ObjType(name, combo) for combo in _tuples(pool, count)
                )
        layer = sorted(set(layer), key=type_key)
    return layer


def _tuples(pool: list[ObjType], n: int) -> list[tuple[ObjType, ...]]:
    if n == 0:
        return [()]
    shorter = _tuples(pool, n - 1)
    return [rest + (t,) for rest in shorter for t in pool]


def is_unityped(ts: TypeSignature) -> bool:
    """True when the signature generates at most one ground type."""
    nullary = sum(1 for c in ts.constructors.values() if c == 0)
    if nullary == 0:
        return True
    return nullary == 1 and len(ts.constructors) == 1
