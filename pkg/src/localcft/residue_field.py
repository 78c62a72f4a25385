"""Exact arithmetic in residue fields of characteristic p.

Two kinds of residue field are supported:

* ``FieldSpec`` / ``FqElem`` -- the finite field F_q, q = p^f, realized as
  F_p[x]/(m) for a deterministic irreducible modulus m, with Frobenius,
  p-th roots, the additive operator wp(a) = a^p - a and its solver.
* ``RatFuncField`` / ``RatFuncElem`` -- the imperfect field F_p(t), with the
  ring operations, Frobenius and wp only.  There is deliberately no inverse
  Frobenius: the field is imperfect.

Elements are immutable; every operation returns a new value in canonical
reduced form.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .errors import FieldMismatch

# ---------------------------------------------------------------------------
# dense polynomial helpers over F_p (coefficient tuples, low degree first)


def _ptrim(c):
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return tuple(c[:i])


def _padd(a, b, p):
    n = max(len(a), len(b))
    return _ptrim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p
                   for i in range(n)])


def _pneg(a, p):
    return tuple((-x) % p for x in a)


def _psub(a, b, p):
    return _padd(a, _pneg(b, p), p)


def _pmul(a, b, p):
    if not a or not b:
        return ()
    res = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    return _ptrim(res)


def _pdivmod(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    inv = pow(lb, -1, p)
    q = [0] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] % p
        if c:
            c = c * inv % p
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return _ptrim(q), _ptrim(a)


def _pmod(a, b, p):
    return _pdivmod(a, b, p)[1]


def _pgcd(a, b, p):
    while b:
        a, b = b, _pmod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = tuple(x * inv % p for x in a)  # monic
    return a


def _is_irreducible(m, p):
    """Trial division by all monic polynomials of degree <= deg(m)/2."""
    deg = len(m) - 1
    if deg <= 0:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for idx in range(p**d):
            # monic divisor candidate of degree d, coefficients base-p digits
            coeffs = []
            k = idx
            for _ in range(d):
                coeffs.append(k % p)
                k //= p
            cand = tuple(coeffs) + (1,)
            if not _pmod(m, cand, p):
                return False
    return True


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _lex_vectors(p, f):
    """Coefficient vectors (c_0, .., c_{f-1}) in lexicographic order, c_0
    compared first."""
    def rec(prefix):
        if len(prefix) == f:
            yield tuple(prefix)
            return
        for c in range(p):
            yield from rec(prefix + [c])
    yield from rec([])


@functools.lru_cache(maxsize=None)
def default_modulus(p: int, f: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree f over F_p.

    Deterministic and table-free, so serialized results are reproducible.
    For f = 1 this is x itself.
    """
    for vec in _lex_vectors(p, f):
        cand = vec + (1,)
        if _is_irreducible(cand, p):
            return cand
    raise RuntimeError("no irreducible polynomial found")


class FieldSpec:
    """The finite field F_{p^f} presented as F_p[x]/(modulus).

    ``modulus`` defaults to the lexicographically smallest monic irreducible
    of degree f (coefficients compared low degree first), so that serialized
    results are reproducible.
    """

    __slots__ = ("p", "f", "modulus")

    def __init__(self, p: int, f: int, modulus: tuple[int, ...] | None = None):
        if not _is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if f < 1:
            raise ValueError(f"residue degree f = {f} must be >= 1")
        if modulus is None:
            modulus = default_modulus(p, f)
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != f + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree f")
        if not _is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.f = f
        self.modulus = modulus

    @property
    def q(self) -> int:
        return self.p**self.f

    def __eq__(self, other):
        return (isinstance(other, FieldSpec)
                and (self.p, self.f, self.modulus) == (other.p, other.f, other.modulus))

    def __hash__(self):
        return hash((self.p, self.f, self.modulus))

    def __repr__(self):
        return f"FieldSpec(p={self.p}, f={self.f})"

    def elem(self, coeffs) -> "FqElem":
        if isinstance(coeffs, FqElem):
            if coeffs.field != self:
                raise FieldMismatch("element from a different field")
            return coeffs
        if isinstance(coeffs, int):
            return self.from_int(coeffs)
        c = tuple(int(x) % self.p for x in coeffs)
        if len(c) > self.f:
            c = _pmod(c, self.modulus, self.p)
        c = c + (0,) * (self.f - len(c))
        return FqElem(self, c[:self.f])

    def from_int(self, k: int) -> "FqElem":
        return FqElem(self, (k % self.p,) + (0,) * (self.f - 1))

    def zero(self) -> "FqElem":
        return self.from_int(0)

    def one(self) -> "FqElem":
        return self.from_int(1)

    def gen(self) -> "FqElem":
        """The class of x (a generator of the field over F_p for f > 1)."""
        if self.f == 1:
            return self.one()
        return FqElem(self, (0, 1) + (0,) * (self.f - 2))

    def basis(self):
        """Power basis 1, x, .., x^{f-1} as elements."""
        out = []
        for i in range(self.f):
            c = [0] * self.f
            c[i] = 1
            out.append(FqElem(self, tuple(c)))
        return out

    def elements(self):
        """All q elements in the deterministic (lexicographic) order."""
        for vec in _lex_vectors(self.p, self.f):
            yield FqElem(self, vec)

    def random_element(self, rng) -> "FqElem":
        return FqElem(self, tuple(rng.randrange(self.p) for _ in range(self.f)))

    def as_dict(self):
        return {"p": self.p, "f": self.f, "modulus": list(self.modulus)}

    @classmethod
    def from_dict(cls, d):
        return cls(d["p"], d["f"], tuple(d["modulus"]))


class FqElem:
    """Element of F_{p^f}: a reduced polynomial residue, coefficients mod p."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs: tuple[int, ...]):
        self.field = field
        self.coeffs = coeffs

    def _check(self, other):
        if not isinstance(other, FqElem):
            raise TypeError(f"expected FqElem, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatch("elements of different fields")

    def __eq__(self, other):
        if isinstance(other, int):
            return self == self.field.from_int(other)
        return (isinstance(other, FqElem) and self.field == other.field
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.field.p, self.field.f, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def is_zero(self):
        return not any(self.coeffs)

    def __add__(self, other):
        self._check(other)
        p = self.field.p
        return FqElem(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        p = self.field.p
        return FqElem(self.field, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        p = self.field.p
        return FqElem(self.field, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            p = self.field.p
            return FqElem(self.field, tuple(a * other % p for a in self.coeffs))
        self._check(other)
        fld = self.field
        prod = _pmul(_ptrim(self.coeffs), _ptrim(other.coeffs), fld.p)
        prod = _pmod(prod, fld.modulus, fld.p)
        return FqElem(fld, prod + (0,) * (fld.f - len(prod)))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in F_q")
        # a^(q-2) works, but extended Euclid keeps cost flat for big q
        return self ** (self.field.q - 2)

    def __truediv__(self, other):
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero in F_q")
        return self * other.inverse()

    def __pow__(self, n: int):
        fld = self.field
        if n < 0:
            return self.inverse() ** (-n)
        result = fld.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def frobenius(self) -> "FqElem":
        return self ** self.field.p

    def pth_root(self) -> "FqElem":
        """Unique p-th root: Frobenius has order f, so this is a^(p^(f-1))."""
        return self ** (self.field.p ** (self.field.f - 1))

    def artin_schreier(self) -> "FqElem":
        """wp(a) = a^p - a."""
        return self.frobenius() - self

    def trace(self) -> int:
        """Absolute trace to F_p, returned as an integer in {0, .., p-1}."""
        t = self.field.zero()
        a = self
        for _ in range(self.field.f):
            t = t + a
            a = a.frobenius()
        return t.coeffs[0]

    def as_list(self):
        return list(self.coeffs)

    def __repr__(self):
        return f"Fq({list(self.coeffs)})"


def solve_artin_schreier(b: FqElem) -> FqElem | None:
    """Some x with x^p - x = b, or None when no solution exists.

    A solution exists iff the absolute trace of b vanishes; when it does, the
    full solution set is x + F_p and the smallest solution in the element
    order is returned.
    """
    fld = b.field
    p, f = fld.p, fld.f
    # matrix of wp on the power basis, columns = wp(basis vectors)
    cols = [e.artin_schreier().coeffs for e in fld.basis()]
    # solve sum x_j * cols[j] = b over F_p by Gaussian elimination
    mat = [[cols[j][i] for j in range(f)] + [b.coeffs[i]] for i in range(f)]
    pivots = []
    r = 0
    for c in range(f):
        piv = next((i for i in range(r, f) if mat[i][c] % p), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = pow(mat[r][c], -1, p)
        mat[r] = [x * inv % p for x in mat[r]]
        for i in range(f):
            if i != r and mat[i][c]:
                q = mat[i][c]
                mat[i] = [(mat[i][j] - q * mat[r][j]) % p for j in range(f + 1)]
        pivots.append(c)
        r += 1
    for i in range(r, f):
        if mat[i][f] % p:
            return None
    x = [0] * f
    for i, c in enumerate(pivots):
        x[c] = mat[i][f] % p
    sol = FqElem(fld, tuple(x))
    # canonical representative: minimum of sol + F_p in lexicographic order
    one = fld.one()
    best = sol
    cur = sol
    for _ in range(p - 1):
        cur = cur + one
        if cur.coeffs < best.coeffs:
            best = cur
    return best


# ---------------------------------------------------------------------------
# the imperfect example field F_p(t)


class RatFuncField:
    """The rational function field F_p(t): the standard imperfect example."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        self.p = p

    def __eq__(self, other):
        return isinstance(other, RatFuncField) and self.p == other.p

    def __hash__(self):
        return hash(("ratfunc", self.p))

    def __repr__(self):
        return f"RatFuncField(p={self.p})"

    def elem(self, num, den=(1,)) -> "RatFuncElem":
        if isinstance(num, RatFuncElem):
            if num.field != self:
                raise FieldMismatch("element from a different field")
            return num
        if isinstance(num, int):
            num = (num,)
        return RatFuncElem.make(self, num, den)

    def from_int(self, k: int) -> "RatFuncElem":
        return RatFuncElem.make(self, (k % self.p,), (1,))

    def zero(self):
        return self.from_int(0)

    def one(self):
        return self.from_int(1)

    def t(self) -> "RatFuncElem":
        return RatFuncElem.make(self, (0, 1), (1,))


@dataclass(frozen=True)
class RatFuncElem:
    """Reduced fraction num/den over F_p[t]; den monic, gcd(num, den) = 1."""

    field: RatFuncField
    num: tuple[int, ...]
    den: tuple[int, ...]

    @classmethod
    def make(cls, field, num, den):
        p = field.p
        num = _ptrim([c % p for c in num])
        den = _ptrim([c % p for c in den])
        if not den:
            raise ZeroDivisionError("zero denominator in F_p(t)")
        if not num:
            return cls(field, (), (1,))
        g = _pgcd(num, den, p)
        if len(g) > 1:
            num = _pdivmod(num, g, p)[0]
            den = _pdivmod(den, g, p)[0]
        lead = den[-1]
        if lead != 1:
            inv = pow(lead, -1, p)
            num = tuple(c * inv % p for c in num)
            den = tuple(c * inv % p for c in den)
        return cls(field, num, den)

    def _check(self, other):
        if not isinstance(other, RatFuncElem) or other.field != self.field:
            raise FieldMismatch("elements of different fields")

    def is_zero(self):
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def __add__(self, other):
        self._check(other)
        p = self.field.p
        num = _padd(_pmul(self.num, other.den, p), _pmul(other.num, self.den, p), p)
        return RatFuncElem.make(self.field, num, _pmul(self.den, other.den, p))

    def __neg__(self):
        return RatFuncElem(self.field, _pneg(self.num, self.field.p), self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            p = self.field.p
            return RatFuncElem.make(self.field, tuple(c * other % p for c in self.num), self.den)
        self._check(other)
        p = self.field.p
        return RatFuncElem.make(self.field, _pmul(self.num, other.num, p),
                                _pmul(self.den, other.den, p))

    __rmul__ = __mul__

    def __truediv__(self, other):
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero in F_p(t)")
        p = self.field.p
        return RatFuncElem.make(self.field, _pmul(self.num, other.den, p),
                                _pmul(self.den, other.num, p))

    def __pow__(self, n: int):
        if n < 0:
            if self.is_zero():
                raise ZeroDivisionError("inverse of zero in F_p(t)")
            return RatFuncElem.make(self.field, self.den, self.num) ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def frobenius(self) -> "RatFuncElem":
        return self ** self.field.p

    def artin_schreier(self) -> "RatFuncElem":
        return self.frobenius() - self

    def __repr__(self):
        return f"RatFunc({list(self.num)}/{list(self.den)})"
