"""Totally ramified extensions L = F[x]/(g), g Eisenstein of degree p^m.

Elements are vectors in the power basis 1, pi, .., pi^(e-1) with coefficients
in the unramified base field; the Eisenstein shape makes pi-adic valuations
exactly computable (the e candidate valuations e*v(c_i) + i are pairwise
distinct mod e, so the minimum is always achieved once).

Norms and traces come from the multiplication matrix (equivalently the
resultant with g); Galois automorphisms are found as roots of g inside L by
a branch-and-prune digit search with Newton acceleration once a root is
separated.  A small catalog supplies the cyclotomic witnesses, and a bounded
enumeration produces all cyclic degree-p extensions containing p in their
norm group, cross-checked against the class-field-theoretic count.
"""

from __future__ import annotations

import math

from . import padic_unram as pa
from .errors import BudgetError, CheckFailure, FieldMismatch, NotEisenstein, PrecisionError
from .padic_unram import UnramElem, UnramPoly
from .residue_field import FieldSpec


def _is_p_power(e: int, p: int) -> int | None:
    m = 0
    while e > 1 and e % p == 0:
        e //= p
        m += 1
    return m if e == 1 else None


class EisensteinExt:
    """Context for L = F[x]/(g) with g monic Eisenstein of degree e = p^m.

    ``exact_coeffs`` optionally records each coefficient as exact data: a
    pair (origin FieldSpec, integer vector in its polynomial basis).  With
    it the extension can be rebuilt at any working precision.
    """

    def __init__(self, base: FieldSpec, g_coeffs, provenance: str = "user",
                 exact_coeffs=None):
        coeffs = list(g_coeffs)
        e = len(coeffs) - 1
        if e < 1:
            raise NotEisenstein("polynomial must have positive degree")
        m = _is_p_power(e, base.p)
        if m is None:
            raise NotEisenstein(f"degree {e} is not a power of p = {base.p}")
        lead = coeffs[-1]
        if not (lead.vec is not None and lead.is_one()):
            raise NotEisenstein("polynomial must be monic")
        for i in range(1, e):
            c = coeffs[i]
            if c.vec is not None and c.v < 1:
                raise NotEisenstein(f"coefficient {i} has valuation 0", index=i)
        a0 = coeffs[0]
        if a0.vec is None or a0.v != 1:
            raise NotEisenstein("constant term must have valuation exactly 1", index=0)
        self.base = base
        self.g = coeffs
        self.e = e
        self.m = m
        self.provenance = provenance
        self.exact_coeffs = exact_coeffs
        self.base_prec = min(c.rel_prec() for c in coeffs if c.vec is not None)
        # reduction rows: pi^(e+j) = sum_i row[j][i] pi^i  for j = 0..e-2
        rows = []
        prev = [-coeffs[i] for i in range(e)]  # pi^e
        rows.append(list(prev))
        for _ in range(e - 2):
            carry = prev[-1]
            nxt = [carry * (-coeffs[0])] + [prev[i - 1] + carry * (-coeffs[i])
                                            for i in range(1, e)]
            rows.append(nxt)
            prev = nxt
        self._red_rows = rows

    @property
    def p(self):
        return self.base.p

    def __eq__(self, other):
        return (isinstance(other, EisensteinExt) and self.base == other.base
                and self.e == other.e
                and all((a - b).is_zero() for a, b in zip(self.g, other.g)))

    def __repr__(self):
        return f"EisensteinExt(deg {self.e} over Q_{self.base.q})"

    # -- element constructors ----------------------------------------------

    def elem(self, coeffs) -> "ExtElem":
        coeffs = list(coeffs)
        if len(coeffs) > self.e:
            raise ValueError("too many coefficients")
        coeffs += [pa.zero(self.base)] * (self.e - len(coeffs))
        return ExtElem(self, tuple(coeffs))

    def from_base(self, c: UnramElem) -> "ExtElem":
        if c.spec != self.base:
            raise FieldMismatch("coefficient from a different base field")
        return self.elem([c])

    def from_int(self, k: int, prec: int | None = None) -> "ExtElem":
        return self.from_base(pa.from_int(self.base, k, prec or self.base_prec))

    def zero(self) -> "ExtElem":
        return self.elem([])

    def one(self, prec: int | None = None) -> "ExtElem":
        return self.from_int(1, prec)

    def pi(self, prec: int | None = None) -> "ExtElem":
        return self.elem([pa.zero(self.base), pa.one(self.base, prec or self.base_prec)])

    def teichmuller(self, theta, prec: int | None = None) -> "ExtElem":
        return self.from_base(pa.teichmuller(self.base, theta, prec or self.base_prec))

    def g_poly(self) -> UnramPoly:
        return UnramPoly(list(self.g))

    def with_precision(self, prec: int) -> "EisensteinExt":
        """The same extension with coefficients at (at least) ``prec``
        relative digits; needs exact coefficient data to raise precision."""
        if self.base_prec >= prec:
            return self
        if self.exact_coeffs is None:
            raise PrecisionError("extension lacks exact coefficient data",
                                 prec - self.base_prec)
        coeffs = [pa.embed_exact_vec(origin, self.base, vec, prec)
                  for origin, vec in self.exact_coeffs]
        return EisensteinExt(self.base, coeffs, self.provenance,
                             exact_coeffs=self.exact_coeffs)

    def as_dict(self):
        return {"base_spec": self.base.as_dict(),
                "g": [c.as_dict() for c in self.g],
                "provenance": self.provenance}


def ext_make(base: FieldSpec, int_coeffs, prec: int | None = None,
             provenance: str = "user") -> EisensteinExt:
    """Build an extension from integer polynomial coefficients (low first)."""
    prec = prec or pa.default_precision(2)
    coeffs = [pa.from_int(base, c, prec) for c in int_coeffs]
    exact = [(base, [c] + [0] * (base.f - 1)) for c in int_coeffs]
    return EisensteinExt(base, coeffs, provenance, exact_coeffs=exact)


class ExtElem:
    """Element sum c_i pi^i of an Eisenstein extension (0 <= i < e)."""

    __slots__ = ("ext", "coeffs")

    def __init__(self, ext: EisensteinExt, coeffs):
        self.ext = ext
        self.coeffs = tuple(coeffs)

    def _check(self, other):
        if not isinstance(other, ExtElem):
            raise TypeError("expected ExtElem")
        if other.ext is not self.ext and other.ext != self.ext:
            raise FieldMismatch("elements of different extensions")

    def __add__(self, other):
        self._check(other)
        return ExtElem(self.ext, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return ExtElem(self.ext, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: UnramElem) -> "ExtElem":
        return ExtElem(self.ext, tuple(a * c for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, UnramElem):
            return self.scale(other)
        if isinstance(other, int):
            return self.scale(pa.from_int(self.ext.base, other,
                                          self.ext.base_prec))
        self._check(other)
        e = self.ext.e
        base = self.ext.base
        prod = [pa.zero(base) for _ in range(2 * e - 1)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero() and a.v == math.inf:
                continue
            for j, b in enumerate(other.coeffs):
                prod[i + j] = prod[i + j] + a * b
        red = self.ext._red_rows
        out = prod[:e]
        for j in range(e - 1):
            c = prod[e + j]
            if not (c.is_zero() and c.v == math.inf):
                row = red[j]
                out = [out[i] + c * row[i] for i in range(e)]
        return ExtElem(self.ext, tuple(out))

    __rmul__ = __mul__

    def times_pi(self, k: int = 1) -> "ExtElem":
        out = self
        pi = self.ext.pi()
        for _ in range(k):
            out = out * pi
        return out

    def mult_matrix(self):
        """Matrix of multiplication by self on the power basis (columns are
        self * pi^j)."""
        cols = []
        cur = self
        for _ in range(self.ext.e):
            cols.append(cur.coeffs)
            cur = cur.times_pi()
        # entries[i][j] = coefficient i of self*pi^j
        return [[cols[j][i] for j in range(self.ext.e)] for i in range(self.ext.e)]

    def valuation(self):
        """pi-adic valuation; the candidates e*v(c_i) + i are distinct mod e,
        so the minimum is exact whenever some coefficient is nonzero."""
        e = self.ext.e
        best = None
        bound = None
        for i, c in enumerate(self.coeffs):
            if c.vec is not None:
                v = e * c.v + i
                if best is None or v < best:
                    best = v
            else:
                b = e * c.v + i if c.v != math.inf else math.inf
                if bound is None or b < bound:
                    bound = b
        if best is not None and (bound is None or best < bound):
            return best
        if best is None:
            return None  # zero to precision
        raise PrecisionError("valuation masked by a zero-to-precision coefficient")

    def is_zero(self):
        return all(c.vec is None for c in self.coeffs)

    def abs_prec(self):
        """Guaranteed pi-adic absolute precision."""
        e = self.ext.e
        return min((e * c.abs_prec() + i if c.abs_prec() != math.inf else math.inf)
                   for i, c in enumerate(self.coeffs))

    def __eq__(self, other):
        self._check(other)
        return (self - other).is_zero()

    __hash__ = None

    def residue(self):
        v = self.valuation()
        if v is None or v > 0:
            return self.ext.base.zero()
        if v < 0:
            raise ValueError("residue of a non-integral element")
        return self.coeffs[0].residue()

    def inverse(self) -> "ExtElem":
        v = self.valuation()
        if v is None:
            raise PrecisionError("inverting an element indistinguishable from zero")
        mat = self.mult_matrix()
        base = self.ext.base
        e = self.ext.e
        rhs = [pa.one(base, self.ext.base_prec)] + [pa.zero(base)] * (e - 1)
        sol = _solve_linear(mat, rhs, base)
        return ExtElem(self.ext, tuple(sol))

    def __truediv__(self, other):
        self._check(other)
        return self * other.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ext.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def map_coeffs(self, fn) -> "ExtElem":
        return ExtElem(self.ext, tuple(fn(c) for c in self.coeffs))

    def truncate_abs(self, pi_prec: int) -> "ExtElem":
        e = self.ext.e
        out = []
        for i, c in enumerate(self.coeffs):
            keep = (pi_prec - i + e - 1) // e  # ceil((pi_prec - i)/e)
            out.append(c.truncate_abs(keep))
        return ExtElem(self.ext, tuple(out))

    def canonical_key(self, pi_prec: int):
        t = self.truncate_abs(pi_prec)
        return tuple(c.canonical_key(10**9) for c in t.coeffs)

    def __repr__(self):
        return f"ExtElem({list(self.coeffs)})"


def _solve_linear(mat, rhs, spec):
    """Solve mat * x = rhs over the unramified field, valuation-aware pivots."""
    n = len(mat)
    work = [list(mat[i]) + [rhs[i]] for i in range(n)]
    perm = list(range(n))
    for col in range(n):
        piv_i, piv_v = None, None
        for i in range(col, n):
            c = work[i][col]
            if c.vec is not None and (piv_v is None or c.v < piv_v):
                piv_i, piv_v = i, c.v
        if piv_i is None:
            raise PrecisionError("singular system (pivot indistinguishable from zero)")
        work[col], work[piv_i] = work[piv_i], work[col]
        piv = work[col][col]
        for i in range(n):
            if i != col:
                c = work[i][col]
                if c.vec is not None:
                    fac = c / piv
                    work[i] = [work[i][j] - fac * work[col][j] for j in range(n + 1)]
    return [work[i][n] / work[i][i] for i in range(n)]


def ext_norm(u: ExtElem) -> UnramElem:
    """N_{L/F}(u) = det of multiplication by u = Res(g, u) for monic g."""
    return pa.matrix_det(u.mult_matrix(), u.ext.base)


def ext_trace(u: ExtElem) -> UnramElem:
    mat = u.mult_matrix()
    acc = mat[0][0]
    for i in range(1, len(mat)):
        acc = acc + mat[i][i]
    return acc


# ---------------------------------------------------------------------------
# roots of a monic polynomial inside the extension


def _heval(coeffs, x):
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * x + c
    return acc


def _residue_poly(coeffs, base):
    out = []
    for c in coeffs:
        v = None
        try:
            v = c.valuation()
        except PrecisionError:
            raise PrecisionError("coefficient valuation unknown in root search")
        if v is None or v > 0:
            out.append(base.zero())
        else:
            out.append(c.residue())
    while out and out[-1].is_zero():
        out.pop()
    return out


def roots_in_extension(h_coeffs, L: EisensteinExt, max_depth: int | None = None):
    """All roots in O_L of a separable polynomial with integral ExtElem
    coefficients (Panayi-style transform search).

    Each node carries a transformed polynomial whose integral roots y map to
    roots x = c + pi^k y of the input.  Simple residue roots are lifted by
    Newton; multiple residue roots refine the node by the substitution
    y -> tau(theta) + pi*y followed by division by the content, which keeps
    the number of live nodes bounded by the degree.  Exhausts all roots or
    raises PrecisionError when a node survives to the depth cap.
    """
    base = L.base
    e = L.e
    prec_pi = min(c.abs_prec() for c in h_coeffs)
    if max_depth is None:
        max_depth = prec_pi
    pi = L.pi()
    roots = []
    # node: (shift c, level k, transformed coefficients)
    nodes = [(L.zero(), 0, list(h_coeffs))]
    while nodes:
        c0, k, hk = nodes.pop()
        if k > max_depth:
            raise PrecisionError(
                "root search exceeded the depth cap; raise the working precision",
                needed_extra=2)
        hbar = _residue_poly(hk, base)
        if len(hbar) <= 1:
            continue  # constant residue polynomial: no integral roots here
        for theta in base.elements():
            val = base.zero()
            dval = base.zero()
            power = base.one()
            for i, cc in enumerate(hbar):
                val = val + cc * power
                if i + 1 < len(hbar):
                    dval = dval + hbar[i + 1] * (i + 1) * power
                power = power * theta
            if not val.is_zero():
                continue
            lift = L.teichmuller(theta)
            if not dval.is_zero():
                y = _newton_simple(hk, lift, prec_pi)
                roots.append(c0 + y.times_pi(k) if k else c0 + y)
                continue
            # multiple residue root: substitute y = tau(theta) + pi*y'
            sub = _substitute_linear(hk, lift, pi, L)
            vmin = None
            for cc in sub:
                v = cc.valuation()
                if v is not None and (vmin is None or v < vmin):
                    vmin = v
            if vmin is None:
                raise PrecisionError("transformed polynomial vanishes to precision")
            if vmin:
                inv = (pi ** vmin).inverse()
                sub = [cc * inv for cc in sub]
            nodes.append((c0 + lift.times_pi(k) if k else c0 + lift, k + 1, sub))
    uniq = []
    for r in roots:
        if not any((r - s).is_zero() for s in uniq):
            uniq.append(r)
    uniq.sort(key=lambda r: r.canonical_key(min(prec_pi, r.abs_prec())))
    return uniq


def _substitute_linear(coeffs, b, pi, L):
    """Coefficients of h(b + pi*y) as a polynomial in y."""
    acc = [coeffs[-1]]
    for c in reversed(coeffs[:-1]):
        nxt = [L.zero() for _ in range(len(acc) + 1)]
        for j, a in enumerate(acc):
            nxt[j] = nxt[j] + a * b
            nxt[j + 1] = nxt[j + 1] + a * pi
        nxt[0] = nxt[0] + c
        acc = nxt
    return acc


def _newton_simple(hk, x, prec_pi, max_iter=64):
    hp = [c * i for i, c in enumerate(hk)][1:]
    for _ in range(max_iter):
        fx = _heval(hk, x)
        v = fx.valuation()
        if v is None or v >= prec_pi - 1:
            return x
        x = x - fx / _heval(hp, x)
    raise PrecisionError("Newton iteration failed to converge")


class ExtAutomorphism:
    """F-automorphism of L determined by the image of pi (a root of g)."""

    def __init__(self, ext: EisensteinExt, image: ExtElem):
        self.ext = ext
        self.image = image
        self._powers = None

    def _image_powers(self):
        if self._powers is None:
            pw = [self.ext.one()]
            for _ in range(self.ext.e - 1):
                pw.append(pw[-1] * self.image)
            self._powers = pw
        return self._powers

    def __call__(self, u: ExtElem) -> ExtElem:
        pw = self._image_powers()
        acc = self.ext.zero()
        for c, pk in zip(u.coeffs, pw):
            if c.vec is not None or c.v != math.inf:
                acc = acc + pk.scale(c)
        return acc

    def is_identity(self) -> bool:
        return (self.image - self.ext.pi()).is_zero()

    def order(self) -> int:
        cur = self.image
        for k in range(1, self.ext.e + 1):
            if (cur - self.ext.pi()).is_zero():
                return k
            cur = self(cur)
        raise ArithmeticError("automorphism order exceeds the degree")

    def __eq__(self, other):
        return isinstance(other, ExtAutomorphism) and (self.image - other.image).is_zero()

    __hash__ = None

    def __repr__(self):
        return f"ExtAutomorphism(pi -> {self.image!r})"


def automorphisms(L: EisensteinExt):
    """All F-automorphisms of L: one per root of g in L, identity first."""
    h = [L.from_base(c) for c in L.g]
    roots = roots_in_extension(h, L)
    pi = L.pi()
    autos = [ExtAutomorphism(L, r) for r in roots]
    autos.sort(key=lambda a: 0 if (a.image - pi).is_zero() else 1)
    return autos


def is_cyclic(L: EisensteinExt):
    """(True, generator) when L/F is Galois with cyclic group of order e."""
    autos = automorphisms(L)
    if len(autos) != L.e:
        return False, None
    for a in autos:
        if a.order() == L.e:
            return True, a
    return False, None


# ---------------------------------------------------------------------------
# cyclotomic catalog


def _cyclotomic_subfield_minpoly(p: int, level: int):
    """Integer minimal polynomial of a prime of the degree-p^level subfield
    of Q_p(zeta_{p^(level+1)}), by exact resultant-type elimination inside
    Z[x]/(Phi)."""
    k = level + 1
    m = p**k
    deg = p ** (k - 1) * (p - 1)
    phi = [0] * (deg + 1)
    for i in range(p):
        phi[i * p ** (k - 1)] = 1

    def polmulmod(a, b):
        res = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    res[i + j] += ai * bj
        for i in range(len(res) - 1, deg - 1, -1):
            co = res[i]
            if co:
                for j in range(deg + 1):
                    res[i - deg + j] -= co * phi[j]
        res = res[:deg]
        return res + [0] * (deg - len(res))

    units = [a for a in range(1, m) if a % p != 0]

    def order(g):
        o, x = 1, g % m
        while x != 1:
            x = x * g % m
            o += 1
        return o

    gen = next(g for g in range(2, m) if g % p and order(g) == len(units))
    s0 = pow(gen, p**level, m)
    S = []
    x = s0
    while x not in S:
        S.append(x)
        x = x * s0 % m
    reps, seen = [], set()
    for a in units:
        if a not in seen:
            reps.append(a)
            seen.update(a * s % m for s in S)

    def zeta_pow(a):
        t = [0] * (a + 1)
        t[a] = 1
        return polmulmod(t, [1] + [0] * (deg - 1))

    minpoly = [[1] + [0] * (deg - 1)]  # polynomial in y over Z[zeta]
    for b in reps:
        pb = [1] + [0] * (deg - 1)
        for a in sorted(S):
            za = zeta_pow(a * b % m)
            term = [(1 if i == 0 else 0) - za[i] for i in range(deg)]
            pb = polmulmod(pb, term)
        new = [[0] * deg for _ in range(len(minpoly) + 1)]
        for i, co in enumerate(minpoly):
            new[i + 1] = [new[i + 1][j] + co[j] for j in range(deg)]
            prod = polmulmod(co, pb)
            new[i] = [new[i][j] - prod[j] for j in range(deg)]
        minpoly = new
    out = []
    for co in minpoly:
        if any(co[1:]):
            raise ArithmeticError("cyclotomic elimination left a zeta term")
        out.append(co[0])
    return out


def cyclotomic_catalog(p: int, level: int, base: FieldSpec | None = None,
                       prec: int | None = None) -> EisensteinExt:
    """The cyclic totally ramified degree-p^level extension cut out of the
    p^(level+1)-th cyclotomic field; its prime has norm exactly p, so p lies
    in the norm group by construction.  Only p odd and level <= 2 are
    supported (p = 2 witnesses come from the enumeration instead)."""
    if p == 2:
        raise ValueError("catalog unsupported for p = 2; use the enumeration")
    if level < 1 or level > 2:
        raise ValueError("catalog supports levels 1 and 2 only")
    base = base or FieldSpec(p, 1)
    if base.p != p:
        raise FieldMismatch("catalog base must have the same p")
    coeffs = _cyclotomic_subfield_minpoly(p, level)
    prec = prec or pa.default_precision(level + 1)
    ext = ext_make(base, coeffs, prec=prec, provenance="catalog")
    return ext


def base_change_unramified(L: EisensteinExt, target: FieldSpec,
                           prec: int | None = None) -> EisensteinExt:
    """Reinterpret g over a larger unramified base; degree, Eisenstein shape
    and (by root transport) cyclicity are preserved."""
    if target.p != L.base.p or target.f % L.base.f != 0:
        raise FieldMismatch("target is not an unramified extension of the base")
    if L.exact_coeffs is not None:
        prec = prec or L.base_prec
        coeffs = [pa.embed_exact_vec(origin, target, vec, prec)
                  for origin, vec in L.exact_coeffs]
        return EisensteinExt(target, coeffs, provenance="base_change",
                             exact_coeffs=L.exact_coeffs)
    coeffs = [pa.embed(c, target) for c in L.g]
    if prec and prec > min(c.rel_prec() for c in coeffs if c.vec is not None):
        raise PrecisionError("cannot raise precision without exact coefficients")
    return EisensteinExt(target, coeffs, provenance="base_change")


# ---------------------------------------------------------------------------
# bounded enumeration of cyclic degree-p extensions with p in the norm group


def cft_extension_count(p: int, f: int) -> int:
    """Number of cyclic totally ramified degree-p extensions of Q_{p^f} whose
    norm group contains p.

    For p odd this is (p^f - 1)/(p - 1), the number of index-p subgroups of
    U_1/U_1^p ~ (Z/p)^f.  For p = 2 the principal units carry the extra
    torsion factor {+-1}, so the honest count is 2^(f+1) - 1.
    """
    if p == 2:
        return 2 ** (f + 1) - 1
    return (p**f - 1) // (p - 1)


def _coefficient_candidates(spec: FieldSpec, coeff_level: int, prec: int):
    """Deterministic representatives of p*O / p^coeff_level O."""
    p, f = spec.p, spec.f
    count = p ** (f * (coeff_level - 1))
    out = []
    for idx in range(count):
        vec = []
        k = idx
        for _ in range(f):
            vec.append(p * (k % p ** (coeff_level - 1)))
            k //= p ** (coeff_level - 1)
        el = pa.UnramElem.from_vec(spec, vec, prec)
        out.append((el if el.vec is not None else pa.zero(spec), vec))
    return out


def enumerate_cyclic_extensions(spec: FieldSpec, n: int = 1, coeff_level: int = 3,
                                budget: int = 200000, prec: int | None = None):
    """Complete list (up to isomorphism) of cyclic totally ramified degree-p
    extensions L of the base with p in N(L*), plus a verification report.

    Candidates are Eisenstein polynomials x^p + a_{p-1}x^{p-1} + .. + a_0
    with a_0 = (-1)^p * p fixed (any such L is generated by a prime of norm
    exactly p) and the other coefficients ranging over p*O mod p^coeff_level.
    Non-Galois candidates are discarded by the norm-limitation criterion
    (their norm subgroup is everything); survivors are deduplicated by norm
    subgroup, verified cyclic by root count, spot-checked by cross-root
    tests, and the class count is checked against the CFT prediction.
    """
    from . import reciprocity  # deferred: reciprocity imports this module

    if n != 1:
        raise BudgetError("enumeration is implemented for degree p only; "
                          "higher p-power witnesses come from the catalog")
    p, f = spec.p, spec.f
    total = p ** (f * (coeff_level - 1) * (p - 1))
    if total > budget:
        raise BudgetError(f"{total} candidates exceed the budget {budget}")
    prec = prec or pa.default_precision(n) + 1
    a0_int = p if p == 2 else -p
    a0 = pa.from_int(spec, a0_int, prec)
    lead = pa.one(spec, prec)
    cands = _coefficient_candidates(spec, coeff_level, prec)
    classes = []  # list of dicts: subgroup, rep ext, members count, sample polys
    tested = 0
    for idx in range(total):
        sel = []
        k = idx
        for _ in range(p - 1):
            sel.append(cands[k % len(cands)])
            k //= len(cands)
        coeffs = [a0] + [el for el, _ in sel] + [lead]
        exact = ([(spec, [a0_int] + [0] * (spec.f - 1))]
                 + [(spec, list(vec)) for _, vec in sel]
                 + [(spec, [1] + [0] * (spec.f - 1))])
        ext = EisensteinExt(spec, coeffs, provenance="enumerated",
                            exact_coeffs=exact)
        tested += 1
        sub = reciprocity.norm_subgroup(ext, n)
        index = sub.index_in_full()
        if index == 1:
            continue  # norm-limitation: non-Galois degree-p candidate
        if index != p:
            raise CheckFailure(
                f"candidate has norm-subgroup index {index}, expected 1 or {p}",
                report={"poly": [c.as_dict() for c in coeffs]})
        for cl in classes:
            if cl["subgroup"].equals(sub):
                cl["members"] += 1
                if len(cl["samples"]) < 4:
                    cl["samples"].append(ext)
                break
        else:
            classes.append({"subgroup": sub, "rep": ext, "members": 1, "samples": []})
    expected = cft_extension_count(p, f)
    # verify each representative really is cyclic, and classes are distinct fields
    for cl in classes:
        cyc, gen = is_cyclic(cl["rep"])
        if not cyc:
            raise CheckFailure("norm-subgroup filter admitted a non-cyclic field")
        cl["generator_order"] = gen.order()
        for other in cl["samples"]:
            h = [cl["rep"].from_base(c) for c in other.g]
            if not roots_in_extension(h, cl["rep"]):
                raise CheckFailure("same norm subgroup but no cross-root: "
                                   "dedup inconsistency")
    for i, cl in enumerate(classes):
        for cl2 in classes[i + 1:]:
            h = [cl["rep"].from_base(c) for c in cl2["rep"].g]
            if roots_in_extension(h, cl["rep"]):
                raise CheckFailure("distinct norm subgroups but isomorphic fields")
    report = {
        "p": p, "f": f, "n": n, "coeff_level": coeff_level,
        "candidates_tested": tested,
        "classes_found": len(classes),
        "cft_expected": expected,
        "cft_spec_formula": (p**f - 1) // (p - 1),
        "count_match": len(classes) == expected,
    }
    if not report["count_match"]:
        raise CheckFailure(
            f"enumeration found {len(classes)} classes but CFT predicts "
            f"{expected}: truncation level or precision bug", report=report)
    exts = [cl["rep"] for cl in classes]
    return exts, report
