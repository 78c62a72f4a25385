"""The principal-unit quotient U_1/U_1^(p^n) in canonical coordinates.

The Artin-Hasse series E(X) = exp(sum_i X^(p^i)/p^i) has p-integral
coefficients; the map

    witt_to_unit(a) = prod_i E(lift(a_i)^(p^(n-i)) * pi)^(p^i)

carries W_n(F_q) homomorphically into U_1/U_1^(p^n) and is injective, with
inverse realized by digit peeling (unit_to_witt).  For p odd it is an
isomorphism and the quotient is coordinatized by W_n(F_q) ~ (Z/p^n)^f;
subgroups are canonicalized by their Howell form over Z/p^n.

For p = 2 the quotient contains the extra torsion class of -1, the map is
not surjective (nor injective for n >= 2), and no Witt coordinatization of
the full quotient exists.  The model then falls back to the explicit finite
quotient (O/2^(n+2))^* restricted to 1 + 2O, modulo its subgroup of 2^n-th
powers, which is exact because U_{n+2} consists of 2^n-th powers.  Subgroups
are canonicalized as sorted element sets.
"""

from __future__ import annotations

import functools
from fractions import Fraction

from . import padic_unram as pa
from . import zmodpk
from .errors import FieldMismatch, PrecisionError
from .residue_field import FieldSpec, FqElem, solve_artin_schreier
from .witt import WittVec, enumerate_witt, from_integer, to_integer


# ---------------------------------------------------------------------------
# Artin-Hasse exponential


@functools.lru_cache(maxsize=None)
def artin_hasse_fractions(p: int, degree: int) -> tuple[Fraction, ...]:
    """Exact coefficients c_0..c_degree of exp(sum_i X^(p^i)/p^i).

    Integrality (no p in any denominator) is asserted; a violation would be
    an implementation bug, not an input error.
    """
    log_coeffs = [Fraction(0)] * (degree + 1)
    i = 0
    while p**i <= degree:
        log_coeffs[p**i] = Fraction(1, p**i)
        i += 1
    c = [Fraction(1)] + [Fraction(0)] * degree
    for k in range(1, degree + 1):
        acc = Fraction(0)
        for j in range(1, k + 1):
            if log_coeffs[j]:
                acc += j * log_coeffs[j] * c[k - j]
        c[k] = acc / k
    for k, ck in enumerate(c):
        if ck.denominator % p == 0:
            raise ArithmeticError(f"Artin-Hasse coefficient {k} is not {p}-integral")
    return tuple(c)


class AHSeries:
    """Truncated Artin-Hasse series with coefficients reduced mod p^N."""

    def __init__(self, p: int, degree: int, prec: int):
        self.p = p
        self.degree = degree
        self.prec = prec
        mod = p**prec
        fracs = artin_hasse_fractions(p, degree)
        self.coeffs = tuple(f.numerator * pow(f.denominator, -1, mod) % mod
                            for f in fracs)

    def __call__(self, x: pa.UnramElem) -> pa.UnramElem:
        """Evaluate at x with v(x) >= 1; truncation is below the precision."""
        if not x.is_zero() and x.v < 1:
            raise ValueError("Artin-Hasse evaluation needs v(x) >= 1")
        spec = x.spec
        acc = pa.zero(spec, self.prec)
        for c in reversed(self.coeffs):
            acc = acc * x + pa.from_int(spec, c, self.prec)
        return acc


@functools.lru_cache(maxsize=None)
def _ah_series(p: int, prec: int) -> AHSeries:
    degree = 1
    while degree <= prec:
        degree *= p
    return AHSeries(p, degree, prec)


def artin_hasse_series(p: int, degree: int | None = None, prec: int = 8) -> AHSeries:
    """The series E truncated at ``degree`` (default: smallest p-power
    exceeding the precision) with coefficients mod p^prec."""
    if degree is None:
        return _ah_series(p, prec)
    return AHSeries(p, degree, prec)


# ---------------------------------------------------------------------------
# the unit map and its inverse


_factor_cache: dict = {}


def _unit_factor(spec: FieldSpec, n: int, i: int, a: FqElem, prec: int,
                 pi_unit=None):
    """E(tau(a)^(p^(n-i)) * pi)^(p^i) at the given precision."""
    key = (spec.p, spec.f, spec.modulus, n, i, a.coeffs, prec,
           None if pi_unit is None else tuple(pi_unit.vec) + (pi_unit.v, pi_unit.K))
    val = _factor_cache.get(key)
    if val is None:
        E = artin_hasse_series(spec.p, prec=prec)
        lift = pa.teichmuller(spec, a, prec) ** (spec.p ** (n - i))
        arg = lift.shift(1)
        if pi_unit is not None:
            arg = arg * pi_unit
        val = E(arg) ** (spec.p**i)
        _factor_cache[key] = val
    return val


def witt_to_unit(a: WittVec, prec: int | None = None, pi_unit=None,
                 lifts=None) -> pa.UnramElem:
    """The principal unit prod_i E(lift(a_i)^(p^(n-i)) pi)^(p^i).

    The uniformizer is pi = p by default; a general pi = p*u is selected by
    passing its unit part ``pi_unit``.  ``lifts`` overrides the Teichmuller
    lifts of the components (used to test that the class does not depend on
    the lifting).
    """
    spec = a.field
    if not isinstance(spec, FieldSpec):
        raise FieldMismatch("unit-level map needs a finite residue field")
    n = a.n
    prec = prec or pa.default_precision(n)
    if lifts is not None:
        E = artin_hasse_series(spec.p, prec=prec)
        acc = pa.one(spec, prec)
        for i, lift in enumerate(lifts):
            arg = (lift ** (spec.p ** (n - i))).shift(1)
            if pi_unit is not None:
                arg = arg * pi_unit
            acc = acc * E(arg) ** (spec.p**i)
        return acc
    acc = pa.one(spec, prec)
    for i, comp in enumerate(a.comps):
        if comp.is_zero():
            continue
        acc = acc * _unit_factor(spec, n, i, comp, prec, pi_unit)
    return acc


def _read_digit(cur: pa.UnramElem, position: int) -> FqElem:
    """Leading digit of cur - 1 at p^position (zero when deeper)."""
    w = cur - pa.one(cur.spec, cur.rel_prec())
    if w.is_zero():
        if w.v <= position:
            raise PrecisionError("digit read beyond precision")
        return cur.spec.zero()
    if w.v < position:
        raise PrecisionError("unit is further from 1 than the expected level")
    if w.v > position:
        return cur.spec.zero()
    return w.leading_digit()


def unit_to_witt(u: pa.UnramElem, n: int) -> WittVec:
    """The unique a with u = witt_to_unit(a) modulo U_1^(p^n).

    Digit peeling: the level-i factor is the only contribution to the
    p^(i+1) digit (p odd), so each read determines a_i after inverse
    Frobenius.  For p = 2 the reads are quadratic equations solved with
    branching, and the residual must be certified a 2^n-th power.
    """
    spec = u.spec
    if u.is_zero() or u.v != 0 or not u.leading_digit() == spec.one():
        raise ValueError("unit_to_witt needs a principal unit")
    if u.abs_prec() < n + 2:
        raise PrecisionError("principal unit known to too few digits",
                             n + 2 - u.abs_prec())
    prec = u.rel_prec()
    if spec.p != 2:
        comps = []
        cur = u
        for i in range(n):
            r = _read_digit(cur, i + 1)
            a = r
            for _ in range(n - i):
                a = a.pth_root()
            comps.append(a)
            if not a.is_zero():
                cur = cur / _unit_factor(spec, n, i, a, prec)
        tail = cur - pa.one(spec, prec)
        if not tail.is_zero() and tail.v <= n:
            raise ValueError("input is not a principal unit modulo U^(p^n) "
                             "of the expected shape (peeling residual too big)")
        return WittVec(spec, tuple(comps))
    return _unit_to_witt_p2(u, n)


def _unit_to_witt_p2(u: pa.UnramElem, n: int) -> WittVec:
    spec = u.spec
    prec = u.rel_prec()
    model = unit_group_model(spec, n)

    def reads(cur, i):
        r = _read_digit(cur, i + 1)
        if i == 0:
            return [r]
        # level-i read solves x + x^2 = r (the square comes from the
        # binomial carry of E(x)^(2^i) at p = 2)
        return [x for x in spec.elements() if (x + x * x) == r]

    def dfs(cur, i, comps):
        if i == n:
            return comps if model.class_of_unit(cur).is_identity() else None
        for x in reads(cur, i):
            a = x
            for _ in range(n - i):
                a = a.pth_root()
            nxt = cur if a.is_zero() else cur / _unit_factor(spec, n, i, a, prec)
            got = dfs(nxt, i + 1, comps + [a])
            if got is not None:
                return got
        return None

    comps = dfs(u, 0, [])
    if comps is None:
        raise ValueError("unit is not in the image of the Witt coordinate map "
                         "(possible for p = 2, where the map is not surjective)")
    return WittVec(spec, tuple(comps))


# ---------------------------------------------------------------------------
# classes and subgroups of U_1/U_1^(p^n)


class UnitClass:
    """A class of U_1/U_1^(p^n), canonically keyed by its model."""

    __slots__ = ("model", "key")

    def __init__(self, model, key):
        self.model = model
        self.key = key

    def __eq__(self, other):
        return (isinstance(other, UnitClass) and self.model is other.model
                and self.key == other.key)

    def __hash__(self):
        return hash(self.key)

    def __mul__(self, other):
        return self.model.mul(self, other)

    def inv(self):
        return self.model.inv(self)

    def __pow__(self, k: int):
        out = self.model.identity()
        base = self if k >= 0 else self.inv()
        k = abs(k)
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_identity(self):
        return self == self.model.identity()

    @property
    def witt(self) -> WittVec | None:
        """Witt coordinates (p odd only)."""
        return self.model.witt_of(self)

    def as_dict(self):
        return self.model.class_dict(self)

    def __repr__(self):
        return f"UnitClass({self.key})"


class UnitSubgroup:
    """Subgroup of U_1/U_1^(p^n) in canonical form.

    p odd: Howell basis of a Z/p^n-submodule of (Z/p^n)^f (unique per
    subgroup).  p = 2: the sorted tuple of member class keys.
    """

    __slots__ = ("model", "form")

    def __init__(self, model, form):
        self.model = model
        self.form = form

    def equals(self, other: "UnitSubgroup") -> bool:
        return self.model is other.model and self.form == other.form

    __eq__ = equals

    def __hash__(self):
        return hash(self.form)

    def contains(self, cls: UnitClass) -> bool:
        return self.model.subgroup_contains(self, cls)

    def contains_subgroup(self, other: "UnitSubgroup") -> bool:
        return self.model.subgroup_contains_subgroup(self, other)

    def size(self) -> int:
        return self.model.subgroup_size(self)

    def index_in_full(self) -> int:
        return self.model.full_size() // self.size()

    def as_dict(self):
        return self.model.subgroup_dict(self)

    def __repr__(self):
        return f"UnitSubgroup(index {self.index_in_full()})"


class _WittModel:
    """Coordinates for p odd: U_1/U^(p^n) ~ W_n(F_q) ~ (Z/p^n)^f."""

    def __init__(self, spec: FieldSpec, n: int):
        self.spec = spec
        self.n = n
        self.p = spec.p
        self.f = spec.f

    # -- classes ---------------------------------------------------------

    def coords_of_witt(self, a: WittVec):
        if self.n == 0:
            return (0,) * self.f
        return tuple(to_integer(a, self.n).integral_vec(self.n))

    def class_of_witt(self, a: WittVec) -> UnitClass:
        if a.n != self.n and self.n > 0:
            raise FieldMismatch("Witt length mismatch")
        return UnitClass(self, self.coords_of_witt(a))

    def class_of_unit(self, u: pa.UnramElem) -> UnitClass:
        if self.n == 0:
            return self.identity()
        return self.class_of_witt(unit_to_witt(u, self.n))

    def identity(self) -> UnitClass:
        return UnitClass(self, (0,) * self.f)

    def mul(self, a: UnitClass, b: UnitClass) -> UnitClass:
        mod = self.p**self.n
        return UnitClass(self, tuple((x + y) % mod for x, y in zip(a.key, b.key)))

    def inv(self, a: UnitClass) -> UnitClass:
        mod = self.p**self.n
        return UnitClass(self, tuple((-x) % mod for x in a.key))

    def witt_of(self, a: UnitClass) -> WittVec:
        if self.n == 0:
            raise ValueError("no Witt coordinates at level 0")
        z = pa.UnramElem.from_vec(self.spec, list(a.key), self.n)
        return from_integer(z, self.n)

    def unit_of(self, a: UnitClass, prec: int | None = None) -> pa.UnramElem:
        """A representative principal unit of the class."""
        if self.n == 0:
            return pa.one(self.spec, prec or pa.default_precision(1))
        return witt_to_unit(self.witt_of(a), prec)

    def class_dict(self, a: UnitClass):
        return {"witt": self.witt_of(a).as_lists() if self.n else []}

    # -- subgroups ----------------------------------------------------------

    def subgroup(self, classes) -> UnitSubgroup:
        rows = [list(c.key) for c in classes]
        if not rows:
            return UnitSubgroup(self, ())
        basis = zmodpk.howell_form(rows, self.p, self.n)
        return UnitSubgroup(self, tuple(tuple(r) for r in basis))

    def subgroup_contains(self, sub: UnitSubgroup, cls: UnitClass) -> bool:
        return zmodpk.in_span(list(cls.key), [list(r) for r in sub.form],
                              self.p, self.n)

    def subgroup_contains_subgroup(self, sub, other) -> bool:
        return all(zmodpk.in_span(list(r), [list(x) for x in sub.form],
                                  self.p, self.n) for r in other.form)

    def subgroup_size(self, sub: UnitSubgroup) -> int:
        return zmodpk.span_size([list(r) for r in sub.form], self.p, self.n)

    def full_size(self) -> int:
        return self.p ** (self.n * self.f)

    def subgroup_dict(self, sub: UnitSubgroup):
        return {"p": self.p, "f": self.f, "n": self.n,
                "howell_basis": [list(r) for r in sub.form]}

    def enumerate_classes(self):
        if self.n == 0:
            yield self.identity()
            return
        for a in enumerate_witt(self.spec, self.n):
            yield self.class_of_witt(a)


class _TwoAdicModel:
    """Exact finite model of U_1/U_1^(2^n) for p = 2.

    Works inside G = (1 + 2 O)/(1 + 2^(n+2) O); since squaring is a
    bijection U_k -> U_{k+1} for k >= 2, the subgroup U_{n+2} consists of
    2^n-th powers and G modulo the image S of the 2^n-power map is exactly
    U_1/U_1^(2^n).  All sets involved are tiny at desk scale.
    """

    def __init__(self, spec: FieldSpec, n: int):
        if spec.p != 2:
            raise ValueError("two-adic model needs p = 2")
        self.spec = spec
        self.n = n
        self.K = n + 2
        self.mod = 2**self.K
        elements = []
        for digs in self._digit_tuples(self.K - 1):
            u = pa.UnramElem.from_digits(spec, 0, (spec.one(),) + digs)
            elements.append(tuple(u.integral_vec(self.K)))
        self.elements = elements
        self.power_image = sorted({self._pow(vec, 2**n) for vec in elements})
        self._id = self.canonical((1,) + (0,) * (spec.f - 1))

    def _digit_tuples(self, count):
        elems = list(self.spec.elements())

        def rec(prefix):
            if len(prefix) == count:
                yield tuple(prefix)
                return
            for e in elems:
                yield from rec(prefix + [e])

        yield from rec([])

    def _mul(self, a, b):
        return tuple(pa._vec_mul(self.spec, list(a), list(b), self.mod))

    def _pow(self, a, k):
        out = (1,) + (0,) * (self.spec.f - 1)
        base = a
        while k:
            if k & 1:
                out = self._mul(out, base)
            base = self._mul(base, base)
            k >>= 1
        return out

    def canonical(self, vec):
        return min(self._mul(vec, s) for s in self.power_image)

    # -- classes ------------------------------------------------------------

    def class_of_unit(self, u: pa.UnramElem) -> UnitClass:
        if u.is_zero() or u.v != 0 or not u.leading_digit() == self.spec.one():
            raise ValueError("not a principal unit")
        vec = tuple(u.integral_vec(self.K))
        return UnitClass(self, self.canonical(vec))

    def class_of_witt(self, a: WittVec) -> UnitClass:
        return self.class_of_unit(witt_to_unit(a, pa.default_precision(self.n)))

    def identity(self) -> UnitClass:
        return UnitClass(self, self._id)

    def mul(self, a, b) -> UnitClass:
        return UnitClass(self, self.canonical(self._mul(a.key, b.key)))

    def inv(self, a) -> UnitClass:
        # every class has order dividing 2^(n+1), so a^(2^(n+1)-1) = a^(-1)
        return UnitClass(self, self.canonical(self._pow(a.key, 2 ** (self.n + 1) - 1)))

    def witt_of(self, a) -> None:
        return None  # no Witt coordinatization of the full quotient at p = 2

    def unit_of(self, a: UnitClass, prec: int | None = None) -> pa.UnramElem:
        u = pa.UnramElem.from_vec(self.spec, list(a.key), self.K)
        if prec and prec > self.K:
            raise PrecisionError("two-adic model caps representatives at its "
                                 "quotient precision")
        return u

    def class_dict(self, a):
        return {"vec_mod_2^k": list(a.key), "k": self.K}

    # -- subgroups -----------------------------------------------------------

    def subgroup(self, classes) -> UnitSubgroup:
        members = {self._id}
        frontier = [self._id]
        gens = [c.key for c in classes]
        while frontier:
            cur = frontier.pop()
            for g in gens:
                nxt = self.canonical(self._mul(cur, g))
                if nxt not in members:
                    members.add(nxt)
                    frontier.append(nxt)
        return UnitSubgroup(self, tuple(sorted(members)))

    def subgroup_contains(self, sub, cls) -> bool:
        return cls.key in sub.form

    def subgroup_contains_subgroup(self, sub, other) -> bool:
        return set(other.form) <= set(sub.form)

    def subgroup_size(self, sub) -> int:
        return len(sub.form)

    def full_size(self) -> int:
        return (2 ** (self.spec.f * (self.K - 1))) // len(self.power_image)

    def subgroup_dict(self, sub):
        return {"p": 2, "f": self.spec.f, "n": self.n,
                "classes": [list(k) for k in sub.form]}

    def enumerate_classes(self):
        seen = set()
        for vec in self.elements:
            key = self.canonical(vec)
            if key not in seen:
                seen.add(key)
                yield UnitClass(self, key)


_model_cache: dict = {}


def unit_group_model(spec: FieldSpec, n: int):
    key = (spec.p, spec.f, spec.modulus, n)
    model = _model_cache.get(key)
    if model is None:
        model = _TwoAdicModel(spec, n) if spec.p == 2 else _WittModel(spec, n)
        _model_cache[key] = model
    return model


def class_of_unit(u: pa.UnramElem, n: int) -> UnitClass:
    return unit_group_model(u.spec, n).class_of_unit(u)


def class_of_witt(a: WittVec, n: int | None = None) -> UnitClass:
    return unit_group_model(a.field, n if n is not None else a.n).class_of_witt(a)


def subgroup_from_generators(classes, model=None) -> UnitSubgroup:
    classes = list(classes)
    if model is None:
        if not classes:
            raise ValueError("need a model for the empty generating set")
        model = classes[0].model
    return model.subgroup(classes)


def predicted_norm_subgroup(w: WittVec, n: int | None = None) -> UnitSubgroup:
    """The subgroup generated by the classes of witt_to_unit(F(w) * wp(x)),
    x over a generating set of W_n(k): the family that the norm groups of
    cyclic degree-p^n extensions with p in their norms are expected to hit.

    wp is Z/p^n-linear and x -> F(w)*x is module-linear, so the Teichmuller
    lifts of an F_p-basis of the residue field generate the full image.
    """
    if not w.is_unit():
        raise ValueError("w must be a unit Witt vector (w_0 != 0)")
    spec = w.field
    n = n if n is not None else w.n
    model = unit_group_model(spec, n)
    fw = w.frobenius()
    gens = []
    for b in spec.basis():
        x = WittVec.teichmuller(b, w.n)
        gens.append(model.class_of_witt(fw * x.artin_schreier()))
    return model.subgroup(gens)
