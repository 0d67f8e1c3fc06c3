"""Intrinsically-typed terms over a context, with capture-avoiding substitution.

Terms use 0-based de Bruijn indices; context position 0 is the innermost
(most recently bound) variable.  A constructor occurrence records the arity
name, the family literal when the arity is family-indexed, the tuple of
ground types instantiating the arity's type parameters, and the argument
terms.  Each argument lives in the context extended by the arity's binder
list evaluated at the instantiation.

Substitution is simultaneous and capture-avoiding: descending under a
binder lifts the substitution by prefixing fresh variables and shifting
every image.  Together with variables-as-terms this is the Kleisli
presentation of the term monad; flattening is definable from it and is not
a separate operation here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .objtypes import ObjType, eval_type_expr
from .signatures import TypedSignature

Context = tuple[ObjType, ...]


class TypeCheckError(Exception):
    """Ill-typed term.  ``path`` lists argument positions from the root."""

    def __init__(self, message: str, path: tuple[int, ...] = ()):
        super().__init__(message)
        self.message = message
        self.path = path

    def __str__(self) -> str:
        if self.path:
            trail = "".join(f".{i}" for i in self.path)
            return f"at argument path {trail[1:]}: {self.message}"
        return self.message


@dataclass(frozen=True, slots=True)
class Var:
    index: int

    def __str__(self) -> str:
        return f"#{self.index}"


@dataclass(frozen=True, slots=True)
class Con:
    name: str
    lit: int | None
    inst: tuple[ObjType, ...]
    args: tuple["Term", ...]

    def __str__(self) -> str:
        head = self.name if self.lit is None else f"{self.name}{{{self.lit}}}"
        parts = [head]
        if self.inst:
            parts[0] += " [" + ", ".join(str(t) for t in self.inst) + "]"
        parts.extend(str(a) for a in self.args)
        return "(" + " ".join(parts) + ")"


Term = Var | Con


def context_extend(
    ctx: Context, inst: Sequence[ObjType], binders: Sequence
) -> Context:
    """Prepend the evaluated binder types; the first binder is innermost."""
    return tuple(eval_type_expr(inst, b) for b in binders) + tuple(ctx)


def infer(sig: TypedSignature, ctx: Context, term: Term) -> ObjType:
    """The unique type of ``term`` in ``ctx``, or a TypeCheckError."""
    return _infer(sig, ctx, term, ())


def _infer(
    sig: TypedSignature, ctx: Context, term: Term, path: tuple[int, ...]
) -> ObjType:
    match term:
        case Var(index=i):
            if not 0 <= i < len(ctx):
                raise TypeCheckError(f"unbound index {i}", path)
            return ctx[i]
        case Con(name=name, lit=lit, inst=inst, args=args):
            ar = sig.arity(name)
            if ar is None:
                raise TypeCheckError(f"unknown arity '{name}'", path)
            if ar.family_index and lit is None:
                raise TypeCheckError(f"'{name}' needs a family literal", path)
            if not ar.family_index and lit is not None:
                raise TypeCheckError(f"'{name}' is not family-indexed", path)
            if len(inst) != ar.degree:
                raise TypeCheckError(
                    f"'{name}' expects {ar.degree} type parameters, got {len(inst)}",
                    path,
                )
            if len(args) != len(ar.args):
                raise TypeCheckError(
                    f"'{name}' expects {len(ar.args)} arguments, got {len(args)}",
                    path,
                )
            for j, (spec, arg) in enumerate(zip(ar.args, args)):
                inner = context_extend(ctx, inst, spec.binders)
                expected = eval_type_expr(inst, spec.body)
                actual = _infer(sig, inner, arg, path + (j,))
                if actual != expected:
                    raise TypeCheckError(
                        f"expected {expected}, found {actual}", path + (j,)
                    )
            return eval_type_expr(inst, ar.result)
    raise TypeCheckError(f"not a term: {term!r}", path)


def check(sig: TypedSignature, ctx: Context, term: Term, ty: ObjType) -> None:
    """Raise TypeCheckError unless ``term`` has type ``ty`` in ``ctx``."""
    actual = infer(sig, ctx, term)
    if actual != ty:
        raise TypeCheckError(f"expected {ty}, found {actual}")


@dataclass(frozen=True, slots=True)
class Judgement:
    """A term packaged with the data that typechecks it."""

    sig: TypedSignature
    ctx: Context
    term: Term
    ty: ObjType

    def __post_init__(self) -> None:
        check(self.sig, self.ctx, self.term, self.ty)


def eta(ctx: Context, i: int) -> Term:
    """The i-th context variable as a term (the unit of the monad)."""
    if not 0 <= i < len(ctx):
        raise IndexError(f"index {i} out of range for context of length {len(ctx)}")
    return Var(i)


def weaken(sig: TypedSignature, term: Term, cutoff: int, amount: int) -> Term:
    """Shift free indices >= ``cutoff`` up by ``amount``.

    Turns a term over A ++ B into one over A ++ C ++ B when len(A) is the
    cutoff and len(C) the amount; bound and low indices are untouched.
    """
    if amount == 0:
        return term
    match term:
        case Var(index=i):
            return Var(i + amount) if i >= cutoff else term
        case Con(name=name, lit=lit, inst=inst, args=args):
            ar = sig.arity(name)
            if ar is None:
                raise TypeCheckError(f"unknown arity '{name}'")
            new_args = tuple(
                weaken(sig, arg, cutoff + len(spec.binders), amount)
                for spec, arg in zip(ar.args, args)
            )
            return Con(name, lit, inst, new_args)
    raise TypeCheckError(f"not a term: {term!r}")


def rename(sig: TypedSignature, term: Term, f: Callable[[int], int]) -> Term:
    """Relabel free variables; under b binders, index i maps through
    ``i if i < b else f(i - b) + b``."""
    return _rename(sig, term, f, 0)


def _rename(sig, term: Term, f, depth: int) -> Term:
    match term:
        case Var(index=i):
            return Var(i) if i < depth else Var(f(i - depth) + depth)
        case Con(name=name, lit=lit, inst=inst, args=args):
            ar = sig.arity(name)
            if ar is None:
                raise TypeCheckError(f"unknown arity '{name}'")
            new_args = tuple(
                _rename(sig, arg, f, depth + len(spec.binders))
                for spec, arg in zip(ar.args, args)
            )
            return Con(name, lit, inst, new_args)
    raise TypeCheckError(f"not a term: {term!r}")


@dataclass(frozen=True, slots=True)
class Substitution:
    """A map from a domain context into terms over a codomain context."""

    domain: Context
    codomain: Context
    images: tuple[Term, ...]

    def validate(self, sig: TypedSignature) -> None:
        if len(self.images) != len(self.domain):
            raise TypeCheckError(
                f"substitution has {len(self.images)} images for a domain of "
                f"length {len(self.domain)}"
            )
        for i, (img, ty) in enumerate(zip(self.images, self.domain)):
            actual = infer(sig, self.codomain, img)
            if actual != ty:
                raise TypeCheckError(
                    f"image {i} has type {actual}, domain expects {ty}"
                )


def identity_substitution(ctx: Context) -> Substitution:
    return Substitution(ctx, ctx, tuple(Var(i) for i in range(len(ctx))))


def substitute(sig: TypedSignature, term: Term, sub: Substitution) -> Term:
    """Capture-avoiding simultaneous substitution.

    Preserves the type: a term of type t over the domain maps to a term of
    type t over the codomain.
    """
    return _subst(sig, term, sub.images)


def _lift(sig: TypedSignature, images: tuple[Term, ...], by: int) -> tuple[Term, ...]:
    if by == 0:
        return images
    fresh = tuple(Var(i) for i in range(by))
    return fresh + tuple(weaken(sig, img, 0, by) for img in images)


def _subst(sig, term: Term, images: tuple[Term, ...]) -> Term:
    match term:
        case Var(index=i):
            if i >= len(images):
                raise TypeCheckError(f"unbound index {i} under substitution")
            return images[i]
        case Con(name=name, lit=lit, inst=inst, args=args):
            ar = sig.arity(name)
            if ar is None:
                raise TypeCheckError(f"unknown arity '{name}'")
            new_args = tuple(
                _subst(sig, arg, _lift(sig, images, len(spec.binders)))
                for spec, arg in zip(ar.args, args)
            )
            return Con(name, lit, inst, new_args)
    raise TypeCheckError(f"not a term: {term!r}")
