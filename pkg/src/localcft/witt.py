"""Truncated p-typical Witt vectors W_n(k) over a residue field k.

The ring structure is carried by the universal sum/product polynomials,
computed once over the integers from the ghost components

    w_i(Z) = sum_{j<=i} p^j Z_j^(p^(i-j)),

reduced mod p at evaluation time.  This one construction is valid for every
residue field of characteristic p, including the imperfect F_p(t).

For finite k there is additionally the classical identification
W_n(F_q) ~ O_F / p^n with the ring of integers of the unramified field
F = Frac(W(F_q)); it serves as the independent oracle for the polynomial
arithmetic (see :func:`to_integer` / :func:`from_integer`).
"""

from __future__ import annotations

import functools
import json
import os
import threading

from .errors import BudgetError, FieldMismatch
from .residue_field import FieldSpec, RatFuncField

DEFAULT_LENGTH_CAP = 4
_TERM_BUDGET = 10**6

CACHE_ENV_VAR = "LOCALCFT_CACHE_DIR"

# ---------------------------------------------------------------------------
# sparse integer polynomials in 2n variables: dict exponent-tuple -> coeff


def _sp_add(a, b):
    out = dict(a)
    for e, c in b.items():
        c2 = out.get(e, 0) + c
        if c2:
            out[e] = c2
        else:
            out.pop(e, None)
    return out


def _sp_scale(a, k):
    if k == 0:
        return {}
    return {e: c * k for e, c in a.items()}


def _sp_mul(a, b):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            c = out.get(e, 0) + ca * cb
            if c:
                out[e] = c
            else:
                out.pop(e, None)
    if len(out) > _TERM_BUDGET:
        raise BudgetError("structure polynomial exceeds the term budget")
    return out


def _sp_pow(a, n):
    nvars = len(next(iter(a))) if a else 0
    result = {(0,) * nvars: 1}
    base = a
    while n:
        if n & 1:
            result = _sp_mul(result, base)
        base = _sp_mul(base, base) if n > 1 else base
        n >>= 1
    return result


def _sp_div_exact(a, k):
    out = {}
    for e, c in a.items():
        q, r = divmod(c, k)
        if r:
            raise ArithmeticError(f"inexact division by {k} in Witt construction")
        out[e] = q
    return out


def _var(i, nvars):
    e = [0] * nvars
    e[i] = 1
    return {tuple(e): 1}


def _ghost(vals, p, i):
    """w_i of a list of polynomials (or of plain variables)."""
    acc = {}
    for j in range(i + 1):
        acc = _sp_add(acc, _sp_scale(_sp_pow(vals[j], p ** (i - j)), p**j))
    return acc


class StructurePolys:
    """Universal Witt sum/product polynomials S_i, P_i for given (p, n).

    Integer coefficients; the ghost identity

        w_i(S_0..S_i) = w_i(X) + w_i(Y),   w_i(P_0..P_i) = w_i(X) * w_i(Y)

    is re-verified symbolically at construction.
    """

    def __init__(self, p: int, n: int):
        nv = 2 * n
        X = [_var(i, nv) for i in range(n)]
        Y = [_var(n + i, nv) for i in range(n)]
        sums, prods = [], []
        for i in range(n):
            rhs = _sp_add(_ghost(X, p, i), _ghost(Y, p, i))
            low = {}
            for j in range(i):
                low = _sp_add(low, _sp_scale(_sp_pow(sums[j], p ** (i - j)), p**j))
            sums.append(_sp_div_exact(_sp_add(rhs, _sp_scale(low, -1)), p**i))
            rhs = _sp_mul(_ghost(X, p, i), _ghost(Y, p, i))
            low = {}
            for j in range(i):
                low = _sp_add(low, _sp_scale(_sp_pow(prods[j], p ** (i - j)), p**j))
            prods.append(_sp_div_exact(_sp_add(rhs, _sp_scale(low, -1)), p**i))
        self.p = p
        self.n = n
        self.sums = sums
        self.prods = prods
        self._verify_ghost(X, Y)
        # evaluation form: per level, list of (coeff mod p, exponents), with
        # zero-mod-p terms dropped
        self.sum_terms = [self._eval_form(s) for s in sums]
        self.prod_terms = [self._eval_form(s) for s in prods]

    def _eval_form(self, poly):
        out = []
        for e, c in sorted(poly.items()):
            cm = c % self.p
            if cm:
                out.append((cm, e))
        return out

    def _verify_ghost(self, X, Y):
        p = self.p
        for i in range(self.n):
            lhs = _ghost(self.sums, p, i)
            rhs = _sp_add(_ghost(X, p, i), _ghost(Y, p, i))
            if _sp_add(lhs, _sp_scale(rhs, -1)):
                raise ArithmeticError("ghost identity fails for Witt sums")
            lhs = _ghost(self.prods, p, i)
            rhs = _sp_mul(_ghost(X, p, i), _ghost(Y, p, i))
            if _sp_add(lhs, _sp_scale(rhs, -1)):
                raise ArithmeticError("ghost identity fails for Witt products")

    def as_dict(self):
        enc = lambda polys: [[[c, list(e)] for e, c in sorted(po.items())] for po in polys]
        return {"p": self.p, "n": self.n, "sums": enc(self.sums), "prods": enc(self.prods)}


_structure_lock = threading.Lock()


@functools.lru_cache(maxsize=None)
def _structure_cached(p: int, n: int) -> StructurePolys:
    cache_dir = os.environ.get(CACHE_ENV_VAR)
    if cache_dir:
        path = os.path.join(cache_dir, f"witt_{p}_{n}.json")
        if os.path.exists(path):
            with open(path) as fh:
                data = json.load(fh)
            sp = StructurePolys.__new__(StructurePolys)
            sp.p, sp.n = p, n
            sp.sums = [{tuple(e): c for c, e in po} for po in data["sums"]]
            sp.prods = [{tuple(e): c for c, e in po} for po in data["prods"]]
            nv = 2 * n
            X = [_var(i, nv) for i in range(n)]
            Y = [_var(n + i, nv) for i in range(n)]
            sp._verify_ghost(X, Y)  # never trust the disk blindly
            sp.sum_terms = [sp._eval_form(s) for s in sp.sums]
            sp.prod_terms = [sp._eval_form(s) for s in sp.prods]
            return sp
    sp = StructurePolys(p, n)
    if cache_dir:
        os.makedirs(cache_dir, exist_ok=True)
        path = os.path.join(cache_dir, f"witt_{p}_{n}.json")
        with open(path, "w") as fh:
            json.dump(sp.as_dict(), fh)
    return sp


def structure_polys(p: int, n: int, length_cap: int = DEFAULT_LENGTH_CAP) -> StructurePolys:
    """Cached structure polynomials; refuses n above the configured cap."""
    if n < 1:
        raise ValueError("Witt length must be >= 1")
    if n > length_cap:
        raise BudgetError(
            f"Witt length {n} exceeds the configured bound {length_cap}; "
            "raise length_cap explicitly if you really want this")
    with _structure_lock:
        return _structure_cached(p, n)


def _eval_terms(terms, values, field):
    """Evaluate an integer polynomial (eval form) at field elements."""
    # power tables per variable
    maxexp = [0] * len(values)
    for _, e in terms:
        for i, ei in enumerate(e):
            if ei > maxexp[i]:
                maxexp[i] = ei
    pows = []
    for v, me in zip(values, maxexp):
        tab = [field.one()]
        for _ in range(me):
            tab.append(tab[-1] * v)
        pows.append(tab)
    acc = field.zero()
    for c, e in terms:
        term = field.one() * c
        for i, ei in enumerate(e):
            if ei:
                term = term * pows[i][ei]
        acc = acc + term
    return acc


class WittVec:
    """Length-n truncated Witt vector over a residue field.

    Immutable.  Ring operations evaluate the universal structure polynomials
    on the components; Frobenius and Verschiebung act componentwise / by
    shifting, and wp = F - 1.
    """

    __slots__ = ("field", "comps")

    def __init__(self, field, comps):
        comps = tuple(field.elem(c) if not hasattr(c, "field") else c for c in comps)
        for c in comps:
            if c.field != field:
                raise FieldMismatch("component from a different residue field")
        if not comps:
            raise ValueError("Witt vectors must have length >= 1")
        self.field = field
        self.comps = comps

    @property
    def n(self):
        return len(self.comps)

    @property
    def p(self):
        return self.field.p

    @classmethod
    def zero(cls, field, n):
        return cls(field, (field.zero(),) * n)

    @classmethod
    def one(cls, field, n):
        return cls(field, (field.one(),) + (field.zero(),) * (n - 1))

    @classmethod
    def teichmuller(cls, a, n):
        """The multiplicative section a |-> (a, 0, .., 0)."""
        field = a.field
        return cls(field, (a,) + (field.zero(),) * (n - 1))

    def _check(self, other):
        if not isinstance(other, WittVec):
            raise TypeError("expected a WittVec")
        if other.field != self.field or other.n != self.n:
            raise FieldMismatch("Witt vectors over different rings")

    def __eq__(self, other):
        return (isinstance(other, WittVec) and self.field == other.field
                and self.comps == other.comps)

    def __hash__(self):
        return hash((self.field, self.comps))

    def is_zero(self):
        return all(c.is_zero() for c in self.comps)

    def __add__(self, other):
        self._check(other)
        sp = structure_polys(self.p, self.n)
        vals = self.comps + other.comps
        return WittVec(self.field,
                       tuple(_eval_terms(sp.sum_terms[i], vals, self.field)
                             for i in range(self.n)))

    def __mul__(self, other):
        self._check(other)
        sp = structure_polys(self.p, self.n)
        vals = self.comps + other.comps
        return WittVec(self.field,
                       tuple(_eval_terms(sp.prod_terms[i], vals, self.field)
                             for i in range(self.n)))

    def __neg__(self):
        # Solve a + x = 0 level by level; S_i = X_i + Y_i + (lower terms),
        # so each level determines x_i directly.  Componentwise negation
        # would be wrong for p = 2.
        sp = structure_polys(self.p, self.n)
        field = self.field
        xs = []
        for i in range(self.n):
            vals = self.comps + tuple(xs) + (field.zero(),) * (self.n - i)
            s = _eval_terms(sp.sum_terms[i], vals, field)
            xs.append(-s)
        return WittVec(field, tuple(xs))

    def __sub__(self, other):
        return self + (-other)

    def frobenius(self) -> "WittVec":
        return WittVec(self.field, tuple(c.frobenius() for c in self.comps))

    def verschiebung(self) -> "WittVec":
        return WittVec(self.field, (self.field.zero(),) + self.comps[:-1])

    def artin_schreier(self) -> "WittVec":
        """wp = F - 1 on the additive group of W_n(k)."""
        return self.frobenius() - self

    def is_unit(self):
        return not self.comps[0].is_zero()

    def as_lists(self):
        return [c.as_list() if hasattr(c, "as_list")
                else {"num": list(c.num), "den": list(c.den)}
                for c in self.comps]

    def as_dict(self):
        tag = ({"p": self.field.p, "kind": "ratfunc"} if isinstance(self.field, RatFuncField)
               else self.field.as_dict())
        return {"field": tag, "components": self.as_lists()}

    def __repr__(self):
        return f"W({', '.join(repr(list(c.coeffs)) if hasattr(c, 'coeffs') else repr(c) for c in self.comps)})"


def enumerate_witt(field: FieldSpec, n: int, units_only: bool = False,
                   bound: int = 10**6):
    """All q^n Witt vectors in deterministic order (units only on request)."""
    total = field.q**n
    if total > bound:
        raise BudgetError(f"enumeration of {total} Witt vectors exceeds bound {bound}")
    elems = list(field.elements())

    def rec(prefix):
        if len(prefix) == n:
            yield WittVec(field, tuple(prefix))
            return
        for e in elems:
            if units_only and not prefix and e.is_zero():
                continue
            yield from rec(prefix + [e])

    yield from rec([])


# ---------------------------------------------------------------------------
# integer-lift oracle: W_n(F_q) <-> O_F / p^n


def to_integer(a: WittVec, precision: int | None = None):
    """Image of ``a`` under W_n(F_q) ~ O_F/p^n:  sum_i p^i tau(a_i^(p^-i)).

    Returns an UnramElem known modulo p^max(precision, n).  Only available
    over finite residue fields.
    """
    from . import padic_unram

    field = a.field
    if not isinstance(field, FieldSpec):
        raise FieldMismatch("integer lift needs a finite residue field")
    n = a.n
    N = max(precision or 0, n)
    acc = padic_unram.zero(field, N)
    for i, comp in enumerate(a.comps):
        c = comp
        for _ in range(i):
            c = c.pth_root()
        t = padic_unram.teichmuller(field, c, N)
        acc = acc + t.shift(i)
    return acc


def from_integer(z, n: int) -> WittVec:
    """Inverse of :func:`to_integer` on O_F/p^n (digit peeling)."""
    field = z.spec
    comps = []
    cur = z.with_min_abs_precision(n)
    for i in range(n):
        from . import padic_unram

        d = cur.residue_digit(0)
        comps.append(d ** (field.p**i))
        t = padic_unram.teichmuller(field, d, max(n - i, 1))
        cur = (cur - t).shift(-1)
    return WittVec(field, tuple(comps))
