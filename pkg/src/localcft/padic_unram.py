"""Arithmetic in the absolutely unramified field F = Frac(W(F_q)).

A nonzero element is p^v times a unit known to K significant digits.  The
canonical external form is the Teichmuller digit vector

    x = p^v * (tau(d_0) + tau(d_1) p + ... + tau(d_{K-1}) p^{K-1}),

d_i in F_q, d_0 != 0: digits serialize the element and realize the Frobenius
automorphism as an exact digit-wise power map.  Internally the unit part is
carried as a polynomial-basis vector over Z/p^K (the basis 1, x, .., x^{f-1}
of O_F/p^K with the integer-lifted residue modulus), on which ring
operations are plain modular arithmetic; the two forms convert exactly and
digits are computed lazily.

Zero-to-precision is a distinguished state carrying the absolute precision
to which the element is known to vanish; it is never conflated with the
exact zero (absolute precision +infinity).  No floating point anywhere.
"""

from __future__ import annotations

import math

from .errors import FieldMismatch, PrecisionError
from .residue_field import FieldSpec, FqElem

DEFAULT_GUARD_DIGITS = 3


def default_precision(n: int) -> int:
    """Working precision for computations targeting U_1/U_1^(p^n)."""
    return n + DEFAULT_GUARD_DIGITS


def v_int(c: int, p: int, cap: int) -> int:
    c = abs(c)
    if c == 0:
        return cap
    v = 0
    while c % p == 0 and v < cap:
        c //= p
        v += 1
    return v


# ---------------------------------------------------------------------------
# polynomial-basis arithmetic: O_F/p^K as (Z/p^K)[x]/(m)


_red_cache: dict = {}


def _reduction_rows(spec: FieldSpec):
    """Integer coefficient vectors of x^(f+j) mod m, j = 0..f-2."""
    key = (spec.p, spec.f, spec.modulus)
    rows = _red_cache.get(key)
    if rows is None:
        f = spec.f
        m = [int(c) for c in spec.modulus]
        rows = []
        prev = [-m[i] for i in range(f)]  # x^f
        rows.append(list(prev))
        for _ in range(1, f - 1):
            carry = prev[-1]
            nxt = [carry * -m[0]] + [prev[i - 1] + carry * -m[i] for i in range(1, f)]
            rows.append(nxt)
            prev = nxt
        _red_cache[key] = rows
    return rows


def _vec_mul(spec: FieldSpec, a, b, mod: int):
    f = spec.f
    if f == 1:
        return [a[0] * b[0] % mod]
    prod = [0] * (2 * f - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    rows = _reduction_rows(spec)
    for j in range(2 * f - 2, f - 1, -1):
        c = prod[j]
        if c:
            row = rows[j - f]
            for i in range(f):
                prod[i] += c * row[i]
    return [prod[i] % mod for i in range(f)]


def _vec_pow(spec, a, n, mod):
    result = [1] + [0] * (spec.f - 1)
    base = list(a)
    while n:
        if n & 1:
            result = _vec_mul(spec, result, base, mod)
        base = _vec_mul(spec, base, base, mod)
        n >>= 1
    return result


_tau_cache: dict = {}


def _tau_vec(spec: FieldSpec, d: FqElem, K: int):
    """Polynomial-basis vector of tau(d) mod p^K (iterate z -> z^q)."""
    key = (spec.p, spec.f, spec.modulus, d.coeffs, K)
    v = _tau_cache.get(key)
    if v is None:
        mod = spec.p**K
        z = [int(c) for c in d.coeffs]
        for _ in range(K):
            z = _vec_pow(spec, z, spec.q, mod)
        v = tuple(z)
        _tau_cache[key] = v
    return v


def _unit_to_vec(spec: FieldSpec, digits, K: int):
    """sum p^i tau(d_i) truncated mod p^K."""
    mod = spec.p**K
    acc = [0] * spec.f
    for i, d in enumerate(digits):
        if i >= K:
            break
        if d.is_zero():
            continue
        t = _tau_vec(spec, d, K - i)
        pi = spec.p**i
        for j in range(spec.f):
            acc[j] = (acc[j] + pi * t[j]) % mod
    return acc


def _vec_to_digits(spec: FieldSpec, vec, K: int):
    """Peel K Teichmuller digits off an integral vector known mod p^K."""
    p = spec.p
    cur = [c % (p**K) for c in vec]
    digits = []
    for i in range(K):
        rem = K - i
        mod = p**rem
        res = spec.elem(tuple(c % p for c in cur))
        digits.append(res)
        if not res.is_zero():
            t = _tau_vec(spec, res, rem)
            cur = [(c - tc) % mod for c, tc in zip(cur, t)]
        for j in range(spec.f):
            assert cur[j] % p == 0
            cur[j] //= p
    return digits


class UnramElem:
    """Element of the unramified field F = Q_q at finite p-adic precision."""

    __slots__ = ("spec", "v", "K", "vec", "_digits")

    def __init__(self, spec: FieldSpec, v, K: int, vec, digits=None):
        # nonzero: vec is the unit-part vector mod p^K (some coordinate a
        # unit), v the exact valuation; zero-to-precision: vec None, K = 0,
        # v the absolute precision bound (math.inf for the exact zero).
        self.spec = spec
        self.v = v
        self.K = K
        self.vec = vec
        self._digits = digits

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_vec(cls, spec, vec, abs_prec: int):
        """Normalize an integral polynomial-basis vector known mod p^abs_prec."""
        p = spec.p
        mod = p**abs_prec
        vec = [c % mod for c in vec]
        if not any(vec):
            return cls(spec, abs_prec, 0, None)
        w = min(v_int(c, p, abs_prec) for c in vec)
        K = abs_prec - w
        pw = p**w
        unit = tuple((c // pw) % p**K for c in vec)
        return cls(spec, w, K, unit)

    @classmethod
    def from_digits(cls, spec, v, digits):
        digits = tuple(digits)
        k = 0
        while k < len(digits) and digits[k].is_zero():
            k += 1
        if k == len(digits):
            return cls(spec, v + len(digits), 0, None)
        digits = digits[k:]
        K = len(digits)
        vec = tuple(_unit_to_vec(spec, digits, K))
        return cls(spec, v + k, K, vec, digits)

    # -- basic state ---------------------------------------------------------

    def is_zero(self) -> bool:
        """Zero to the stated precision."""
        return self.vec is None

    @property
    def valuation(self):
        return self.v

    def rel_prec(self) -> int:
        return self.K

    def abs_prec(self):
        return self.v + self.K if self.vec is not None else self.v

    @property
    def digits(self) -> tuple[FqElem, ...]:
        """Teichmuller digits of the unit part (lazy, cached)."""
        if self.vec is None:
            return ()
        if self._digits is None:
            self._digits = tuple(_vec_to_digits(self.spec, self.vec, self.K))
        return self._digits

    def _require_nonzero(self, what="operation"):
        if self.vec is None:
            raise PrecisionError(
                f"{what} needs an element distinguishable from zero "
                f"(known zero mod p^{self.v})")

    # -- conversions ----------------------------------------------------------

    def unit_vec(self, K: int):
        """Unit-part vector mod p^K, K <= rel_prec."""
        self._require_nonzero("unit_vec")
        if K > self.K:
            raise PrecisionError("not enough digits", K - self.K)
        mod = self.spec.p**K
        return [c % mod for c in self.vec]

    def integral_vec(self, K: int):
        """Polynomial-basis vector of the element mod p^K (requires v >= 0)."""
        if self.vec is None:
            if self.v < K:
                raise PrecisionError("zero-to-precision below requested precision",
                                     K - self.v)
            return [0] * self.spec.f
        if self.v < 0:
            raise ValueError("element is not integral")
        if self.v >= K:
            return [0] * self.spec.f
        need = K - self.v
        if need > self.K:
            raise PrecisionError("not enough digits", need - self.K)
        mod = self.spec.p**K
        pv = self.spec.p**self.v
        return [c * pv % mod for c in self.vec]

    # -- arithmetic ------------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, UnramElem):
            raise TypeError("expected UnramElem")
        if other.spec != self.spec:
            raise FieldMismatch("elements of different unramified fields")

    def __add__(self, other):
        self._check(other)
        a, b = self, other
        if a.vec is None and b.vec is None:
            return UnramElem(self.spec, min(a.v, b.v), 0, None)
        if a.vec is None:
            a, b = b, a
        if b.vec is None:
            abs_prec = min(a.abs_prec(), b.v)
            return a.truncate_abs(abs_prec)
        v = min(a.v, b.v)
        abs_prec = min(a.abs_prec(), b.abs_prec())
        if abs_prec <= v:
            return UnramElem(self.spec, abs_prec, 0, None)
        K = abs_prec - v
        mod = self.spec.p**K
        pa_, pb_ = self.spec.p ** (a.v - v), self.spec.p ** (b.v - v)
        s = [(x * pa_ + y * pb_) % mod for x, y in zip(a.vec, b.vec)]
        res = UnramElem.from_vec(self.spec, s, K)
        if res.vec is None:
            return UnramElem(self.spec, v + K, 0, None)
        return UnramElem(self.spec, res.v + v, res.K, res.vec)

    def __neg__(self):
        if self.vec is None:
            return self
        mod = self.spec.p**self.K
        return UnramElem(self.spec, self.v, self.K,
                         tuple((-c) % mod for c in self.vec))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self * from_int(self.spec, other, self.K or 1)
        self._check(other)
        if self.vec is None or other.vec is None:
            return UnramElem(self.spec, self.v + other.v, 0, None)
        K = min(self.K, other.K)
        mod = self.spec.p**K
        prod = _vec_mul(self.spec, self.unit_vec(K), other.unit_vec(K), mod)
        return UnramElem(self.spec, self.v + other.v, K, tuple(prod))

    __rmul__ = __mul__

    def leading_digit(self) -> FqElem:
        """First Teichmuller digit of the unit part (= its residue)."""
        self._require_nonzero("leading digit")
        return self.spec.elem(tuple(c % self.spec.p for c in self.vec))

    def inverse(self):
        self._require_nonzero("inversion")
        K = self.K
        p = self.spec.p
        mod = p**K
        u = list(self.vec)
        res = self.leading_digit().inverse()
        x = [int(c) for c in res.coeffs]
        known = 1
        while known < K:  # Hensel: x -> x(2 - ux) doubles correct digits
            ux = _vec_mul(self.spec, u, x, mod)
            two_minus = [((2 if i == 0 else 0) - ux[i]) % mod
                         for i in range(self.spec.f)]
            x = _vec_mul(self.spec, x, two_minus, mod)
            known *= 2
        return UnramElem(self.spec, -self.v, K, tuple(x))

    def __truediv__(self, other):
        self._check(other)
        other._require_nonzero("division")
        return self * other.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        if self.vec is None:
            if n == 0:
                return one(self.spec, 1)
            return UnramElem(self.spec, self.v * n, 0, None)
        K = self.K
        result = one(self.spec, K)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- structure maps ----------------------------------------------------------

    def frobenius(self) -> "UnramElem":
        """Arithmetic Frobenius: exact digit-wise p-th power."""
        return self.frobenius_power(1)

    def frobenius_power(self, k: int) -> "UnramElem":
        if self.vec is None:
            return self
        k %= self.spec.f
        if k == 0:
            return self
        q = self.spec.p**k
        return UnramElem.from_digits(self.spec, self.v,
                                     tuple(d**q for d in self.digits))

    def shift(self, k: int) -> "UnramElem":
        """Multiply by p^k (exact)."""
        if self.vec is None:
            nv = self.v + k if self.v != math.inf else math.inf
            return UnramElem(self.spec, nv, 0, None)
        return UnramElem(self.spec, self.v + k, self.K, self.vec, self._digits)

    def residue(self) -> FqElem:
        """Residue of an integral element (v > 0 reduces to zero)."""
        if self.vec is None:
            if self.v < 1:
                raise PrecisionError("residue beyond known precision")
            return self.spec.zero()
        if self.v < 0:
            raise ValueError("element is not integral")
        if self.v > 0:
            return self.spec.zero()
        return self.spec.elem(tuple(c % self.spec.p for c in self.vec))

    def residue_digit(self, j: int) -> FqElem:
        """The j-th Teichmuller digit of an integral element."""
        if self.vec is None:
            if self.v <= j:
                raise PrecisionError("digit beyond known precision", j - self.v + 1)
            return self.spec.zero()
        if self.v < 0:
            raise ValueError("element is not integral")
        if j < self.v:
            return self.spec.zero()
        if j - self.v >= self.K:
            raise PrecisionError("digit beyond known precision")
        return self.digits[j - self.v]

    def unit_part(self) -> "UnramElem":
        self._require_nonzero("unit part")
        return UnramElem(self.spec, 0, self.K, self.vec, self._digits)

    def teichmuller_part(self) -> "UnramElem":
        """tau of the leading digit, at the element's relative precision."""
        return teichmuller(self.spec, self.leading_digit(), self.K)

    def principal_part(self) -> "UnramElem":
        """u / tau(residue(u)) for a unit u: the principal-unit factor."""
        if self.v != 0:
            raise ValueError("principal part of a non-unit")
        return self / self.teichmuller_part()

    # -- precision management ------------------------------------------------------

    def truncate_abs(self, abs_prec) -> "UnramElem":
        if abs_prec == math.inf:
            return self
        if self.vec is None:
            return UnramElem(self.spec, min(self.v, abs_prec), 0, None)
        if abs_prec <= self.v:
            return UnramElem(self.spec, abs_prec, 0, None)
        K = abs_prec - self.v
        if K >= self.K:
            return self
        mod = self.spec.p**K
        return UnramElem(self.spec, self.v, K, tuple(c % mod for c in self.vec))

    def with_min_abs_precision(self, abs_prec: int) -> "UnramElem":
        if self.abs_prec() < abs_prec:
            raise PrecisionError("insufficient precision",
                                 abs_prec - self.abs_prec())
        return self

    def is_one(self) -> bool:
        if self.vec is None or self.v != 0:
            return False
        return self.vec[0] % self.spec.p**self.K == 1 and not any(self.vec[1:])

    def __eq__(self, other):
        """Equality to the joint precision min(abs_prec_a, abs_prec_b)."""
        if isinstance(other, int):
            other = from_int(self.spec, other, max(self.K, 1))
        if not isinstance(other, UnramElem) or other.spec != self.spec:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None  # equality is precision-relative

    def canonical_key(self, abs_prec):
        t = self.truncate_abs(abs_prec)
        if t.vec is None:
            return (1, t.v, ())
        return (0, t.v, tuple(t.vec))

    def as_dict(self):
        return {"valuation": (None if self.v == math.inf else self.v),
                "digits": [list(d.coeffs) for d in self.digits],
                "precision": self.K}

    def __repr__(self):
        if self.vec is None:
            return f"O(p^{self.v})"
        ds = ",".join(str(list(d.coeffs)) for d in self.digits)
        return f"p^{self.v}*[{ds}]"


# -- constructors ---------------------------------------------------------------


def zero(spec: FieldSpec, abs_prec=math.inf) -> UnramElem:
    return UnramElem(spec, abs_prec, 0, None)


def one(spec: FieldSpec, prec: int) -> UnramElem:
    return UnramElem(spec, 0, prec, (1,) + (0,) * (spec.f - 1))


def from_int(spec: FieldSpec, k: int, prec: int) -> UnramElem:
    if k == 0:
        return zero(spec)
    v = 0
    while k % spec.p == 0:
        k //= spec.p
        v += 1
    mod = spec.p**prec
    return UnramElem(spec, v, prec, (k % mod,) + (0,) * (spec.f - 1))


def teichmuller(spec: FieldSpec, a: FqElem, prec: int) -> UnramElem:
    """The unique multiplicative lift: tau(a)^q = tau(a) with residue a."""
    if a.is_zero():
        return zero(spec)
    vec = _tau_vec(spec, a, prec)
    digits = (a,) + (spec.zero(),) * (prec - 1)
    return UnramElem(spec, 0, prec, tuple(vec), digits)


# ---------------------------------------------------------------------------
# embeddings between unramified fields (residue embedding, digit-wise lift)


_embed_cache: dict = {}


def residue_embedding(small: FieldSpec, big: FieldSpec):
    """Canonical embedding F_{p^f} -> F_{p^{fd}}: x maps to the smallest root
    of the small modulus, in the deterministic element order."""
    key = (small.p, small.f, small.modulus, big.f, big.modulus)
    table = _embed_cache.get(key)
    if table is None:
        if small.p != big.p or big.f % small.f != 0:
            raise FieldMismatch("no embedding between these fields")
        if small == big:
            table = [big.elem(tuple(1 if j == i else 0 for j in range(big.f)))
                     for i in range(small.f)]
            _embed_cache[key] = table
            return table
        root = None
        for cand in big.elements():
            acc = big.zero()
            power = big.one()
            for c in small.modulus:
                if c:
                    acc = acc + power * c
                power = power * cand
            if acc.is_zero():
                root = cand
                break
        if root is None:
            raise FieldMismatch("modulus has no root in the target field")
        table = []
        power = big.one()
        for _ in range(small.f):
            table.append(power)
            power = power * root
        _embed_cache[key] = table
    return table


def embed_residue(a: FqElem, big: FieldSpec) -> FqElem:
    table = residue_embedding(a.field, big)
    acc = big.zero()
    for c, basis in zip(a.coeffs, table):
        if c:
            acc = acc + basis * c
    return acc


def embed(x: UnramElem, big: FieldSpec) -> UnramElem:
    """Digit-wise lift of the residue embedding: an exact ring embedding."""
    if x.spec == big:
        return x
    if x.vec is None:
        return UnramElem(big, x.v, 0, None)
    return UnramElem.from_digits(big, x.v,
                                 tuple(embed_residue(d, big) for d in x.digits))


_gen_lift_cache: dict = {}


def _embedded_generator(origin: FieldSpec, big: FieldSpec, prec: int) -> UnramElem:
    """Image in O_big of the polynomial-basis generator of O_origin, at the
    requested precision: the Hensel lift of the canonical residue root of
    the origin modulus (agrees with the digit-wise embedding, which is the
    same ring embedding by uniqueness of the lift)."""
    key = (origin.p, origin.f, origin.modulus, big.f, big.modulus, prec)
    got = _gen_lift_cache.get(key)
    if got is None:
        rho_bar = residue_embedding(origin, big)[1] if origin.f > 1 else big.one()
        g = UnramPoly.from_ints(big, list(origin.modulus), prec)
        gd = g.derivative()
        x = teichmuller(big, rho_bar, prec)
        for _ in range(64):
            fx = g(x)
            if fx.is_zero() and fx.v >= prec:
                break
            x = x - fx / gd(x)
        got = x
        _gen_lift_cache[key] = got
    return got


def embed_exact_vec(origin: FieldSpec, big: FieldSpec, vec, prec: int) -> UnramElem:
    """Element of O_big defined by exact integer coordinates in the
    polynomial basis of O_origin, carried to at least ``prec`` significant
    digits (the data is exact, so any precision is reachable)."""
    if origin.p != big.p or big.f % origin.f != 0:
        raise FieldMismatch("no embedding between these fields")
    if not any(vec):
        return zero(big)
    w = min(v_int(c, big.p, prec + 64) for c in vec if c)
    abs_prec = prec + w
    if origin.f == 1 or not any(vec[1:]):
        mod = big.p**abs_prec
        return UnramElem.from_vec(big, [vec[0] % mod] + [0] * (big.f - 1), abs_prec)
    if origin == big:
        return UnramElem.from_vec(big, list(vec), abs_prec)
    rho = _embedded_generator(origin, big, abs_prec)
    acc = zero(big, abs_prec)
    power = one(big, abs_prec)
    for c in vec:
        if c:
            acc = acc + power * from_int(big, c, abs_prec)
        power = power * rho
    return acc


# ---------------------------------------------------------------------------
# polynomials over the unramified field


class UnramPoly:
    """Polynomial with UnramElem coefficients, low degree first."""

    def __init__(self, coeffs):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.coeffs = coeffs

    @classmethod
    def from_ints(cls, spec, ints, prec):
        return cls([from_int(spec, c, prec) for c in ints])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __call__(self, x: UnramElem) -> UnramElem:
        if not self.coeffs:
            return zero(x.spec)
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UnramPoly":
        return UnramPoly([c * i for i, c in enumerate(self.coeffs)][1:])

    def __repr__(self):
        return f"UnramPoly({self.coeffs})"


def resultant(g: UnramPoly, h: UnramPoly) -> UnramElem:
    """Res(g, h) via the Sylvester matrix, eliminated with valuation-aware
    pivoting.  Satisfies Res(g, h) = lc(g)^deg(h) * prod h(roots of g)."""
    n, m = g.degree, h.degree
    if n < 0 or m < 0:
        raise ValueError("resultant of the zero polynomial")
    spec = g.coeffs[0].spec
    g.coeffs[-1]._require_nonzero("resultant leading coefficient")
    h.coeffs[-1]._require_nonzero("resultant leading coefficient")
    if n == 0:
        return g.coeffs[0] ** m
    if m == 0:
        return h.coeffs[0] ** n
    size = n + m
    rows = []
    for i in range(m):
        row = [zero(spec) for _ in range(size)]
        for j, c in enumerate(g.coeffs):
            row[i + (n - j)] = c
        rows.append(row)
    for i in range(n):
        row = [zero(spec) for _ in range(size)]
        for j, c in enumerate(h.coeffs):
            row[i + (m - j)] = c
        rows.append(row)
    return _det(rows, spec)


def matrix_det(rows, spec) -> UnramElem:
    """Determinant of a matrix of UnramElems, valuation-aware pivoting."""
    return _det([list(r) for r in rows], spec)


def _det(rows, spec) -> UnramElem:
    size = len(rows)
    sign = 1
    det_parts = []
    for col in range(size):
        pivot_idx, pivot_val = None, None
        for i in range(col, size):
            c = rows[i][col]
            if c.vec is not None:
                if pivot_val is None or c.v < pivot_val:
                    pivot_idx, pivot_val = i, c.v
        if pivot_idx is None:
            if any(rows[i][col].v != math.inf for i in range(col, size)):
                raise PrecisionError("pivot indistinguishable from zero in determinant")
            return zero(spec)
        if pivot_idx != col:
            rows[col], rows[pivot_idx] = rows[pivot_idx], rows[col]
            sign = -sign
        piv = rows[col][col]
        det_parts.append(piv)
        for i in range(col + 1, size):
            c = rows[i][col]
            if c.vec is not None:
                factor = c / piv
                rows[i] = [rows[i][j] - factor * rows[col][j] for j in range(size)]
    acc = det_parts[0]
    for piv in det_parts[1:]:
        acc = acc * piv
    return acc if sign == 1 else -acc


def hensel_roots(g: UnramPoly, max_newton: int = 64):
    """All roots of g in O_F, found from simple residue roots by Newton.

    Requires the leading coefficient to be a unit and every residue root to
    be simple (squarefree to precision); a repeated residue root raises.
    """
    if g.degree < 1:
        return []
    spec = g.coeffs[0].spec
    lead = g.coeffs[-1]
    lead._require_nonzero("hensel leading coefficient")
    if lead.v != 0:
        raise ValueError("leading coefficient must be a unit")
    prec = min(c.rel_prec() + max(c.v, 0) for c in g.coeffs if c.vec is not None)
    res_coeffs = []
    for c in g.coeffs:
        if c.vec is not None and c.v == 0:
            res_coeffs.append(c.residue())
        elif c.vec is not None or c.v >= 1:
            res_coeffs.append(spec.zero())
        else:
            raise PrecisionError("coefficient unknown at the residue level")
    gd = g.derivative()
    roots = []
    for r in spec.elements():
        val = spec.zero()
        power = spec.one()
        for c in res_coeffs:
            val = val + c * power
            power = power * r
        if not val.is_zero():
            continue
        dval = spec.zero()
        power = spec.one()
        for i, c in enumerate(res_coeffs[1:], start=1):
            dval = dval + c * i * power
            power = power * r
        if dval.is_zero():
            raise PrecisionError("repeated residue root: polynomial is not "
                                 "squarefree to precision")
        x = teichmuller(spec, r, prec)
        for _ in range(max_newton):
            fx = g(x)
            if fx.is_zero() and fx.v >= prec:
                break
            x = x - fx / gd(x)
        roots.append(x.truncate_abs(prec))
    roots.sort(key=lambda x: x.canonical_key(prec))
    return roots
