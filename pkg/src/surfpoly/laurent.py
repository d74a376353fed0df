"""Sparse exact multivariate Laurent polynomials over Python integers.

The carrier type for every polynomial in the package.  Terms are stored as
``{exponent tuple: coefficient}`` over an alphabetically sorted variable
tuple; variables that no term uses are dropped, so two polynomials are equal
iff their normalized data agree, iff their canonical strings agree.

Substitution is exact composition.  Bindings whose image would leave the
Laurent ring (inverting a non-monomial) raise :class:`NonLaurentResult`.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Union

from .errors import NonLaurentResult

Coeffable = Union["LaurentPolynomial", int]


class LaurentPolynomial:
    __slots__ = ("_vars", "_terms")

    def __init__(
        self,
        variables: Iterable[str] = (),
        terms: Mapping[tuple[int, ...], int] | None = None,
    ):
        variables = tuple(variables)
        terms = dict(terms or {})
        self._vars, self._terms = _normalize(variables, terms)

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPolynomial":
        return cls((), {})

    @classmethod
    def constant(cls, c: int) -> "LaurentPolynomial":
        return cls((), {(): c} if c else {})

    @classmethod
    def variable(cls, name: str) -> "LaurentPolynomial":
        return cls((name,), {(1,): 1})

    @classmethod
    def monomial(cls, coeff: int, exponents: Mapping[str, int]) -> "LaurentPolynomial":
        names = tuple(sorted(exponents))
        return cls(names, {tuple(exponents[n] for n in names): coeff})

    # -- predicates ----------------------------------------------------------

    @property
    def variables(self) -> tuple[str, ...]:
        return self._vars

    @property
    def terms(self) -> dict[tuple[int, ...], int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def constant_value(self) -> int:
        """Value of a constant polynomial (zero or a single degree-0 term)."""
        if not self._terms:
            return 0
        if self._vars or set(self._terms) != {()}:
            raise ValueError(f"{self} is not constant")
        return self._terms[()]

    # -- ring operations -------------------------------------------------------

    def __add__(self, other: Coeffable) -> "LaurentPolynomial":
        other = _coerce(other)
        names, a, b = _align(self, other)
        out = dict(a)
        for exps, c in b.items():
            out[exps] = out.get(exps, 0) + c
        return LaurentPolynomial(names, out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial(self._vars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: Coeffable) -> "LaurentPolynomial":
        return self + (-_coerce(other))

    def __rsub__(self, other: Coeffable) -> "LaurentPolynomial":
        return _coerce(other) + (-self)

    def __mul__(self, other: Coeffable) -> "LaurentPolynomial":
        other = _coerce(other)
        names, a, b = _align(self, other)
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                key = tuple(x + y for x, y in zip(e1, e2))
                out[key] = out.get(key, 0) + c1 * c2
        return LaurentPolynomial(names, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPolynomial":
        if k < 0:
            if not self.is_monomial():
                raise NonLaurentResult(f"cannot invert non-monomial {self}")
            (exps, c), = self._terms.items()
            if c not in (1, -1):
                raise NonLaurentResult(f"cannot invert coefficient {c}")
            inv = LaurentPolynomial(self._vars, {tuple(-e for e in exps): c})
            return inv ** (-k)
        result = LaurentPolynomial.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPolynomial.constant(other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._vars == other._vars and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self._vars, tuple(sorted(self._terms.items()))))

    # -- structure-changing operations ----------------------------------------

    def rename(self, mapping: Mapping[str, str]) -> "LaurentPolynomial":
        """Simultaneously rename variables (e.g. swap X and Y)."""
        new_names = [mapping.get(v, v) for v in self._vars]
        if len(set(new_names)) != len(new_names):
            raise ValueError("rename collapses distinct variables")
        order = sorted(range(len(new_names)), key=lambda i: new_names[i])
        vars_sorted = tuple(new_names[i] for i in order)
        terms = {tuple(e[i] for i in order): c for e, c in self._terms.items()}
        return LaurentPolynomial(vars_sorted, terms)

    def substitute(self, bindings: Mapping[str, Coeffable]) -> "LaurentPolynomial":
        """Exact simultaneous composition; unbound variables pass through.

        A non-monomial binding is only legal for a variable occurring with
        nonnegative exponents; monomial bindings (unit coefficient) are legal
        for any exponents.
        """
        bound = {v: _coerce(p) for v, p in bindings.items() if v in self._vars}
        if not bound:
            return self
        for v in bound:
            i = self._vars.index(v)
            exps = {e[i] for e in self._terms}
            if any(k < 0 for k in exps):
                b = bound[v]
                coeff_ok = b.is_monomial() and abs(next(iter(b._terms.values()))) == 1
                if not coeff_ok:
                    raise NonLaurentResult(
                        f"binding for {v} must be an invertible monomial "
                        f"(it appears with negative exponents)"
                    )
        power_cache: dict[tuple[str, int], LaurentPolynomial] = {}

        def power(v: str, k: int) -> LaurentPolynomial:
            key = (v, k)
            if key not in power_cache:
                power_cache[key] = bound[v] ** k
            return power_cache[key]

        total = LaurentPolynomial.zero()
        for exps, c in self._terms.items():
            residual_exps = {}
            factor = LaurentPolynomial.constant(c)
            for v, k in zip(self._vars, exps):
                if k == 0:
                    continue
                if v in bound:
                    factor = factor * power(v, k)
                else:
                    residual_exps[v] = k
            if residual_exps:
                factor = factor * LaurentPolynomial.monomial(1, residual_exps)
            total = total + factor
        return total

    # -- output ----------------------------------------------------------------

    def to_canonical_string(self) -> str:
        """Deterministic text form: terms graded-lex by exponent vector over
        alphabetical variables; equality of polynomials iff string equality."""
        if not self._terms:
            return "0"
        keyed = sorted(
            self._terms.items(),
            key=lambda item: (sum(item[0]), tuple(-e for e in item[0])),
        )
        pieces = []
        for exps, c in keyed:
            factors = []
            for v, e in zip(self._vars, exps):
                if e == 0:
                    continue
                factors.append(v if e == 1 else f"{v}^{e}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            pieces.append((c < 0, body))
        first_neg, first = pieces[0]
        out = ("-" if first_neg else "") + first
        for neg, body in pieces[1:]:
            out += (" - " if neg else " + ") + body
        return out

    __str__ = to_canonical_string

    def __repr__(self) -> str:
        return f"LaurentPolynomial({self.to_canonical_string()!r})"


def _normalize(
    variables: tuple[str, ...], terms: dict[tuple[int, ...], int]
) -> tuple[tuple[str, ...], dict[tuple[int, ...], int]]:
    terms = {e: c for e, c in terms.items() if c}
    for e in terms:
        if len(e) != len(variables):
            raise ValueError("exponent vector length does not match variables")
    used = [i for i in range(len(variables)) if any(e[i] for e in terms)]
    names = [variables[i] for i in used]
    if len(set(names)) != len(names):
        raise ValueError(f"duplicate variable names in {variables}")
    order = sorted(range(len(used)), key=lambda j: names[j])
    out_vars = tuple(names[j] for j in order)
    out_terms: dict[tuple[int, ...], int] = {}
    for e, c in terms.items():
        key = tuple(e[used[j]] for j in order)
        out_terms[key] = out_terms.get(key, 0) + c
    return out_vars, {e: c for e, c in out_terms.items() if c}


def _coerce(x: Coeffable) -> LaurentPolynomial:
    if isinstance(x, LaurentPolynomial):
        return x
    if isinstance(x, int):
        return LaurentPolynomial.constant(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPolynomial")


def _align(a: LaurentPolynomial, b: LaurentPolynomial):
    """Common sorted variable tuple and both term dicts re-indexed to it."""
    if a._vars == b._vars:
        return a._vars, a._terms, b._terms
    names = tuple(sorted(set(a._vars) | set(b._vars)))

    def expand(p: LaurentPolynomial) -> dict[tuple[int, ...], int]:
        idx = [p._vars.index(v) if v in p._vars else None for v in names]
        return {
            tuple(0 if i is None else e[i] for i in idx): c
            for e, c in p._terms.items()
        }

    return names, expand(a), expand(b)
