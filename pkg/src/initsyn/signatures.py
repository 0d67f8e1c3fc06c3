"""Typed signatures: type constructors, type expressions, and term arities.

A language is declared as a typed signature: a set of type constructors
(each with an argument count) plus a set of term constructors ("arities").
An arity of degree n abstracts over n type parameters, written $1..$n in
type expressions; each argument of an arity carries a binder list (the
types of the variables the constructor binds in that argument) and a body
type; the arity also declares a result type.
"""

from __future__ import annotations

from dataclasses import dataclass, field


# ---------------------------------------------------------------------------
# Type expressions


@dataclass(frozen=True, slots=True)
class TVar:
    """The k-th type parameter, written $k.  Indices are 1-based."""

    index: int

    def __str__(self) -> str:
        return f"${self.index}"


@dataclass(frozen=True, slots=True)
class TApp:
    """A type constructor applied to argument expressions."""

    name: str
    args: tuple["TypeExpr", ...] = ()

    def __str__(self) -> str:
        if not self.args:
            return self.name
        return f"{self.name}({','.join(str(a) for a in self.args)})"


TypeExpr = TVar | TApp


def min_degree(e: TypeExpr) -> int:
    """Largest $k occurring in ``e``; 0 for a closed expression."""
    match e:
        case TVar(index=k):
            return k
        case TApp(args=args):
            return max((min_degree(a) for a in args), default=0)
    raise TypeError(f"not a type expression: {e!r}")


# ---------------------------------------------------------------------------
# Signatures


@dataclass(frozen=True)
class TypeSignature:
    """Named family of type constructors with their argument counts."""

    name: str
    constructors: dict[str, int]

    def arity_of(self, name: str) -> int | None:
        return self.constructors.get(name)


@dataclass(frozen=True, slots=True)
class ArgSpec:
    """One argument of a term arity: binder types, then the body type."""

    binders: tuple[TypeExpr, ...]
    body: TypeExpr


@dataclass(frozen=True, slots=True)
class TermArity:
    """A term constructor shape.

    ``degree`` is the number of type parameters; ``family_index`` marks an
    arity standing for a whole family indexed by a natural literal (one
    concrete constructor per literal, all sharing this shape).  An empty
    ``args`` tuple is a constant.
    """

    name: str
    degree: int
    args: tuple[ArgSpec, ...]
    result: TypeExpr
    family_index: bool = False


@dataclass(frozen=True)
class TypedSignature:
    """A type signature plus term arities over it.

    ``atoms`` is sugar: each atom name contributes one extra nullary type
    constructor (kept separate from ``types`` so signature files print the
    way they were written).
    """

    types: TypeSignature
    terms: tuple[TermArity, ...]
    atoms: tuple[str, ...] = ()
    _arities: dict[str, TermArity] = field(
        init=False, repr=False, compare=False, default_factory=dict
    )
    _all_types: "TypeSignature | None" = field(
        init=False, repr=False, compare=False, default=None
    )

    def __post_init__(self) -> None:
        index = {a.name: a for a in self.terms}
        merged = dict(self.types.constructors)
        for atom in self.atoms:
            merged.setdefault(atom, 0)
        object.__setattr__(self, "_arities", index)
        object.__setattr__(
            self, "_all_types", TypeSignature(self.types.name, merged)
        )

    @property
    def name(self) -> str:
        return self.types.name

    @property
    def all_types(self) -> TypeSignature:
        """Type signature with atoms folded in; use this for type checks."""
        assert self._all_types is not None
        return self._all_types

    def arity(self, name: str) -> TermArity | None:
        return self._arities.get(name)

    def type_arity(self, name: str) -> int | None:
        return self.all_types.arity_of(name)


# ---------------------------------------------------------------------------
# Validation


@dataclass(frozen=True, slots=True)
class ValidationReport:
    entries: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.entries

    def __str__(self) -> str:
        return "ok" if self.ok else "\n".join(self.entries)


def _check_expr(
    sig: TypedSignature, e: TypeExpr, degree: int, where: str, out: list[str]
) -> None:
    match e:
        case TVar(index=k):
            if k < 1:
                out.append(f"{where}: variable index {k} is not positive")
            elif k > degree:
                out.append(f"{where}: variable {k} exceeds degree {degree}")
        case TApp(name=name, args=args):
            declared = sig.type_arity(name)
            if declared is None:
                out.append(f"{where}: unknown type constructor '{name}'")
            elif declared != len(args):
                out.append(
                    f"{where}: {name} expects {declared} argument"
                    f"{'s' if declared != 1 else ''}, got {len(args)}"
                )
            for a in args:
                _check_expr(sig, a, degree, where, out)
        case _:
            out.append(f"{where}: not a type expression: {e!r}")


def validate_signature(sig: TypedSignature) -> ValidationReport:
    """Collect every violation of the signature invariants.

    An empty report means the signature is well formed.  Reserved names
    (leading ``__``) are rejected so that translation templates can use
    them for engine forms without ambiguity.
    """
    out: list[str] = []
    for name, count in sig.types.constructors.items():
        if name.startswith("__"):
            out.append(f"type constructor '{name}': name is reserved")
        if count < 0:
            out.append(f"type constructor '{name}': negative arity count")
    seen_atoms: set[str] = set()
    for atom in sig.atoms:
        if atom.startswith("__"):
            out.append(f"atom '{atom}': name is reserved")
        if atom in sig.types.constructors or atom in seen_atoms:
            out.append(f"atom '{atom}': duplicate type constructor name")
        seen_atoms.add(atom)
    seen: set[str] = set()
    for ar in sig.terms:
        where = f"arity '{ar.name}'"
        if ar.name.startswith("__"):
            out.append(f"{where}: name is reserved")
        if ar.name in seen:
            out.append(f"{where}: duplicate arity name")
        seen.add(ar.name)
        if ar.degree < 0:
            out.append(f"{where}: negative degree")
            continue
        for j, spec in enumerate(ar.args, start=1):
            for b in spec.binders:
                _check_expr(sig, b, ar.degree, f"{where}, argument {j} binder", out)
            _check_expr(sig, spec.body, ar.degree, f"{where}, argument {j}", out)
        _check_expr(sig, ar.result, ar.degree, f"{where}, result", out)
    return ValidationReport(tuple(out))
