"""Arithmetic in GF(q) and in the polynomial ring GF(q)[Y].

Field elements are integer codes 0..q-1.  For q = p^d the code packs the d
residue digits of the element in base p (low digit = constant coordinate), so
prime fields are just residues mod p.  An Fq instance owns flat add/mul/neg/inv
tables, which keeps element operations at dictionary-free list-index speed for
the desk-scale fields this library targets (q <= 9 built in, any small prime
power accepted with an explicit modulus).

Polynomials are immutable coefficient tuples (low to high, trimmed).  The
degree of the zero polynomial is the NEG_INF singleton: it orders below every
integer but refuses arithmetic, so code must branch on zeroness explicitly
instead of letting a -1 sentinel leak into degree formulas.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, List, Optional, Sequence, Tuple


class _Extended:
    """Signed infinity used for degrees and valuations. Ordering only."""

    __slots__ = ("_pos",)

    def __init__(self, pos: bool):
        self._pos = pos

    def __lt__(self, other):
        if other is self:
            return False
        return not self._pos

    def __gt__(self, other):
        if other is self:
            return False
        return self._pos

    def __le__(self, other):
        return self == other or self < other

    def __ge__(self, other):
        return self == other or self > other

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash(("infinity", self._pos))

    def __neg__(self):
        return POS_INF if self is NEG_INF else NEG_INF

    def __repr__(self):
        return "POS_INF" if self._pos else "NEG_INF"


NEG_INF = _Extended(False)
POS_INF = _Extended(True)

# reflected comparisons (int < _Extended) work through int's NotImplemented,
# so no monkey patching is needed; arithmetic on the singletons raises TypeError.


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


# ---------------------------------------------------------------------------
# digit-vector helpers over the prime field, used only to bootstrap Fq tables
# ---------------------------------------------------------------------------


def _vec_trim(v: List[int]) -> List[int]:
    while v and v[-1] == 0:
        v.pop()
    return v


def _vec_mul(u: Sequence[int], v: Sequence[int], p: int) -> List[int]:
    if not u or not v:
        return []
    out = [0] * (len(u) + len(v) - 1)
    for i, a in enumerate(u):
        if a:
            for j, b in enumerate(v):
                out[i + j] = (out[i + j] + a * b) % p
    return _vec_trim(out)


def _vec_mod(u: Sequence[int], m: Sequence[int], p: int) -> List[int]:
    r = list(u)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(r) - 1 >= dm and _vec_trim(r):
        shift = len(r) - 1 - dm
        c = (r[-1] * inv_lead) % p
        for i, b in enumerate(m):
            r[i + shift] = (r[i + shift] - c * b) % p
        _vec_trim(r)
    return r


def _vec_irreducible(m: Sequence[int], p: int) -> bool:
    d = len(m) - 1
    if d < 1:
        return False
    # trial division by every monic candidate of degree <= d/2
    for deg in range(1, d // 2 + 1):
        for code in range(p ** deg):
            v = []
            c = code
            for _ in range(deg):
                v.append(c % p)
                c //= p
            v.append(1)
            if not _vec_trim(_vec_mod(m, v, p)):
                return False
    return True


_BUILTIN_MODULI = {
    4: (1, 1, 1),      # T^2 + T + 1 over GF(2)
    8: (1, 1, 0, 1),   # T^3 + T + 1 over GF(2)
    9: (1, 0, 1),      # T^2 + 1 over GF(3)
}


class Fq:
    """A small finite field GF(q) with table-based arithmetic on codes."""

    __slots__ = ("p", "d", "q", "modulus", "add_t", "mul_t", "neg_t", "inv_t",
                 "_poly_cache")

    def __init__(self, q: int, modulus: Optional[Sequence[int]] = None):
        p, d = _prime_power_split(q)
        self.p = p
        self.d = d
        self.q = q
        if d == 1:
            if modulus is not None:
                raise ValueError("prime field takes no modulus")
            self.modulus: Tuple[int, ...] = ()
        else:
            if modulus is None:
                if q not in _BUILTIN_MODULI:
                    raise ValueError(f"no built-in modulus for q={q}")
                modulus = _BUILTIN_MODULI[q]
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != d + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree d over GF(p)")
            if not _vec_irreducible(modulus, p):
                raise ValueError("modulus is reducible over GF(p)")
            self.modulus = modulus
        self._build_tables()
        self._poly_cache = {}

    def _build_tables(self) -> None:
        p, d, q = self.p, self.d, self.q
        self.neg_t = [(-a) % p if d == 1 else self._pack([(-x) % p for x in self._unpack(a)])
                      for a in range(q)]
        add = []
        mul = []
        for a in range(q):
            arow_add = []
            arow_mul = []
            for b in range(q):
                if d == 1:
                    arow_add.append((a + b) % p)
                    arow_mul.append((a * b) % p)
                else:
                    va, vb = self._unpack(a), self._unpack(b)
                    arow_add.append(self._pack([(x + y) % p for x, y in zip(va, vb)]))
                    prod = _vec_mod(_vec_mul(_vec_trim(list(va)), _vec_trim(list(vb)), p),
                                    self.modulus, p)
                    arow_mul.append(self._pack(prod + [0] * (d - len(prod))))
            add.append(arow_add)
            mul.append(arow_mul)
        self.add_t = add
        self.mul_t = mul
        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if mul[a][b] == 1:
                    inv[a] = b
                    break
            else:
                raise ValueError("element without inverse; field tables broken")
        self.inv_t = inv

    def _unpack(self, code: int) -> List[int]:
        v = []
        for _ in range(self.d):
            v.append(code % self.p)
            code //= self.p
        return v

    def _pack(self, digits: Sequence[int]) -> int:
        code = 0
        for x in reversed(digits):
            code = code * self.p + x
        return code

    # element ops ----------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return self.add_t[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add_t[a][self.neg_t[b]]

    def neg(self, a: int) -> int:
        return self.neg_t[a]

    def mul(self, a: int, b: int) -> int:
        return self.mul_t[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(q)")
        return self.inv_t[a]

    def coords(self, a: int) -> Tuple[int, ...]:
        """Residue digits of an element, constant coordinate first."""
        return tuple(self._unpack(a))

    def from_coords(self, digits: Sequence[int]) -> int:
        if len(digits) != self.d:
            raise ValueError("expected d digits")
        return self._pack([x % self.p for x in digits])

    def element_text(self, a: int) -> str:
        """Base-p digit string of the code, most significant digit first."""
        if self.d == 1:
            return str(a)
        return "".join(str(x) for x in reversed(self._unpack(a))).lstrip("0") or "0"

    def element_from_text(self, s: str) -> int:
        v = int(s, self.p)
        if not 0 <= v < self.q:
            raise ValueError(f"element {s!r} out of range for q={self.q}")
        return v

    # polynomial factories ---------------------------------------------------

    def poly(self, coeffs: Sequence[int]) -> "Poly":
        coeffs = tuple(int(c) for c in coeffs)
        for c in coeffs:
            if not 0 <= c < self.q:
                raise ValueError(f"coefficient {c} out of range for q={self.q}")
        return Poly(self, coeffs)

    @property
    def zero(self) -> "Poly":
        return self._cached_poly(())

    @property
    def one(self) -> "Poly":
        return self._cached_poly((1,))

    @property
    def Y(self) -> "Poly":
        return self._cached_poly((0, 1))

    def const(self, c: int) -> "Poly":
        return self.poly((c,))

    def monomial(self, k: int, c: int = 1) -> "Poly":
        return self.poly((0,) * k + (c,))

    def _cached_poly(self, coeffs: Tuple[int, ...]) -> "Poly":
        try:
            return self._poly_cache[coeffs]
        except KeyError:
            p = Poly(self, coeffs)
            self._poly_cache[coeffs] = p
            return p

    def __eq__(self, other):
        return (isinstance(other, Fq) and self.p == other.p and self.d == other.d
                and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.d, self.modulus))

    def __repr__(self):
        return f"Fq({self.q})"


def _prime_power_split(q: int) -> Tuple[int, int]:
    if q < 2:
        raise ValueError("q must be a prime power >= 2")
    for p in range(2, q + 1):
        if q % p == 0:
            if not _is_prime(p):
                break
            d = 0
            m = q
            while m % p == 0:
                m //= p
                d += 1
            if m != 1:
                raise ValueError(f"q={q} is not a prime power")
            return p, d
    raise ValueError(f"q={q} is not a prime power")


@lru_cache(maxsize=None)
def get_field(q: int, modulus: Optional[Tuple[int, ...]] = None) -> Fq:
    """Shared Fq instances so polynomials from the same q compare cheaply."""
    return Fq(q, modulus)


class Poly:
    """Element of GF(q)[Y]: trimmed coefficient tuple, low degree first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Fq, coeffs: Tuple[int, ...]):
        n = len(coeffs)
        while n and coeffs[n - 1] == 0:
            n -= 1
        self.field = field
        self.coeffs = coeffs[:n]

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lead(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_unit(self) -> bool:
        return len(self.coeffs) == 1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    # ring operations --------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        f = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        add = f.add_t
        out = list(a)
        for i, c in enumerate(b):
            out[i] = add[out[i]][c]
        return Poly(f, tuple(out))

    def __neg__(self) -> "Poly":
        neg = self.field.neg_t
        return Poly(self.field, tuple(neg[c] for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        f = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return f.zero
        add, mul = f.add_t, f.mul_t
        out = [0] * (len(a) + len(b) - 1)
        for i, c in enumerate(a):
            if c:
                row = mul[c]
                for j, e in enumerate(b):
                    if e:
                        out[i + j] = add[out[i + j]][row[e]]
        return Poly(f, tuple(out))

    def scale(self, c: int) -> "Poly":
        if c == 0:
            return self.field.zero
        mul = self.field.mul_t[c]
        return Poly(self.field, tuple(mul[x] for x in self.coeffs))

    def shift(self, k: int) -> "Poly":
        """Multiply by Y^k (k >= 0)."""
        if not self.coeffs:
            return self
        return Poly(self.field, (0,) * k + self.coeffs)

    def __divmod__(self, other: "Poly") -> Tuple["Poly", "Poly"]:
        f = self.field
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        a = list(self.coeffs)
        b = other.coeffs
        db = len(b) - 1
        if len(a) - 1 < db:
            return f.zero, self
        add, mul, neg = f.add_t, f.mul_t, f.neg_t
        inv_lead = f.inv_t[b[-1]]
        quo = [0] * (len(a) - db)
        for i in range(len(a) - db - 1, -1, -1):
            c = mul[a[i + db]][inv_lead]
            if c:
                quo[i] = c
                for j in range(db + 1):
                    a[i + j] = add[a[i + j]][neg[mul[c][b[j]]]]
        return Poly(f, tuple(quo)), Poly(f, tuple(a[:db]))

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        if not self.coeffs:
            raise ValueError("zero polynomial cannot be made monic")
        if self.coeffs[-1] == 1:
            return self
        return self.scale(self.field.inv_t[self.coeffs[-1]])

    def evaluate(self, x: int) -> int:
        f = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = f.add_t[f.mul_t[acc][x]][c]
        return acc

    # ordering and identity ---------------------------------------------------

    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        """Canonical order: by degree, then lexicographic leading to constant."""
        return (len(self.coeffs), tuple(reversed(self.coeffs)))

    def __lt__(self, other: "Poly") -> bool:
        return self.sort_key() < other.sort_key()

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.coeffs == other.coeffs
                and self.field == other.field)

    def __hash__(self):
        return hash((self.field.q, self.coeffs))

    def __repr__(self):
        return f"Poly({pretty_poly(self)!r}, q={self.field.q})"

    def __str__(self):
        return pretty_poly(self)


# ---------------------------------------------------------------------------
# gcd machinery
# ---------------------------------------------------------------------------


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; errors when both arguments vanish."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: Poly, b: Poly) -> Tuple[Poly, Poly, Poly]:
    """Extended Euclid: returns (g, u, v) with u*a + v*b = g, g monic."""
    f = a.field
    if a.is_zero() and b.is_zero():
        raise ValueError("xgcd(0, 0) is undefined")
    r0, r1 = a, b
    u0, u1 = f.one, f.zero
    v0, v1 = f.zero, f.one
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    if r0.coeffs[-1] != 1:
        c = f.inv_t[r0.coeffs[-1]]
        r0, u0, v0 = r0.scale(c), u0.scale(c), v0.scale(c)
    return r0, u0, v0


def is_coprime(a: Poly, b: Poly) -> bool:
    if a.is_zero() and b.is_zero():
        return False
    return poly_gcd(a, b).is_one()


# ---------------------------------------------------------------------------
# enumeration, irreducibility, factoring
# ---------------------------------------------------------------------------


def polys_of_degree(field: Fq, d: int, monic: bool = False) -> Iterator[Poly]:
    """All polynomials of exact degree d in canonical order. d=-1 yields zero."""
    if d < 0:
        yield field.zero
        return
    q = field.q
    leads = [1] if monic else range(1, q)
    for lead in leads:
        for code in range(q ** d):
            tail = []
            c = code
            for _ in range(d):
                tail.append(c % q)
                c //= q
            # sort_key reads coefficients leading-to-constant, so the constant
            # coefficient (low digit of code) must advance fastest
            yield Poly(field, tuple(tail) + (lead,))


def polys_up_to_degree(field: Fq, d: int) -> Iterator[Poly]:
    yield field.zero
    for k in range(d + 1):
        yield from polys_of_degree(field, k)


def is_irreducible(p: Poly) -> bool:
    d = p.degree
    if d is NEG_INF or d < 1:
        return False
    for k in range(1, d // 2 + 1):
        for cand in polys_of_degree(p.field, k, monic=True):
            if (p % cand).is_zero():
                return False
    return True


@lru_cache(maxsize=None)
def _irreducibles_cached(q: int, modulus: Optional[Tuple[int, ...]], d: int) -> Tuple[Poly, ...]:
    field = get_field(q, modulus)
    out = []
    for cand in polys_of_degree(field, d, monic=True):
        for k in range(1, d // 2 + 1):
            if any((cand % w).is_zero() for w in _irreducibles_cached(q, modulus, k)):
                break
        else:
            out.append(cand)
    return tuple(out)


def irreducibles_of_degree(field: Fq, d: int) -> Tuple[Poly, ...]:
    """Monic irreducibles of exact degree d, canonically ordered."""
    if d < 1:
        raise ValueError("degree must be >= 1")
    return _irreducibles_cached(field.q, field.modulus or None, d)


def factor(p: Poly) -> Tuple[Poly, ...]:
    """Monic irreducible factors with multiplicity, canonically sorted.

    The leading coefficient is dropped: the product of the returned factors
    times p.lead equals p.  Constants factor into the empty tuple.
    """
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    field = p.field
    rem = p.monic()
    out: List[Poly] = []
    d = 1
    while rem.degree is not NEG_INF and rem.degree >= 1:
        if d > rem.degree // 2:
            out.append(rem)
            break
        for w in irreducibles_of_degree(field, d):
            while True:
                quo, r = divmod(rem, w)
                if r.is_zero():
                    out.append(w)
                    rem = quo
                else:
                    break
        d += 1
    return tuple(sorted(out, key=Poly.sort_key))


@dataclass(frozen=True)
class Ideal:
    """Nonzero ideal of GF(q)[Y], stored by its monic generator."""

    gen: Poly

    def __post_init__(self):
        if self.gen.is_zero():
            raise ValueError("ideal generator must be nonzero")
        if not self.gen.is_monic():
            object.__setattr__(self, "gen", self.gen.monic())

    @classmethod
    def unit(cls, field: Fq) -> "Ideal":
        return cls(field.one)

    @property
    def field(self) -> Fq:
        return self.gen.field

    @property
    def norm(self) -> int:
        # N(I) = q^deg(gen); the unit ideal has norm 1
        if self.gen.is_one():
            return 1
        return self.gen.field.q ** self.gen.degree

    def primes(self) -> Tuple[Poly, ...]:
        """Distinct monic prime divisors of the generator."""
        seen = []
        for w in factor(self.gen):
            if w not in seen:
                seen.append(w)
        return tuple(seen)

    def contains(self, p: Poly) -> bool:
        return (p % self.gen).is_zero()

    def __str__(self):
        return f"({pretty_poly(self.gen)})"


# ---------------------------------------------------------------------------
# text encoding
# ---------------------------------------------------------------------------


def poly_to_text(p: Poly) -> str:
    """Comma-joined coefficient codes, constant first, each in base-p digits."""
    if p.is_zero():
        return "0"
    return ",".join(p.field.element_text(c) for c in p.coeffs)


def pretty_poly(p: Poly) -> str:
    if p.is_zero():
        return "0"
    field = p.field
    terms = []
    for k in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[k]
        if c == 0:
            continue
        if field.d == 1:
            cs = "" if (c == 1 and k > 0) else str(c)
        else:
            cs = "" if (c == 1 and k > 0) else f"[{field.element_text(c)}]"
        if k == 0:
            terms.append(cs if cs else "1")
        elif k == 1:
            terms.append(f"{cs}*Y" if cs else "Y")
        else:
            terms.append(f"{cs}*Y^{k}" if cs else f"Y^{k}")
    return "+".join(terms)


def poly_from_text(field: Fq, s: str) -> Poly:
    """Parse the comma form ("1,0,1") or a simple pretty form ("Y^2+1")."""
    s = s.strip()
    if not s:
        raise ValueError("empty polynomial text")
    if "," in s or s.isdigit() and "Y" not in s:
        if "," in s:
            return field.poly([field.element_from_text(t.strip()) for t in s.split(",")])
        return field.poly([field.element_from_text(s)])
    coeffs: dict = {}
    for term in s.replace("-", "+-").split("+"):
        term = term.strip()
        if not term:
            continue
        negate = term.startswith("-")
        if negate:
            term = term[1:].strip()
        if "Y" in term:
            head, _, tail = term.partition("Y")
            head = head.rstrip("*").strip()
            if head.startswith("[") and head.endswith("]"):
                head = head[1:-1]
            c = field.element_from_text(head) if head else 1
            k = int(tail[1:]) if tail.startswith("^") else (int(tail) if tail else 1)
        else:
            if term.startswith("[") and term.endswith("]"):
                term = term[1:-1]
            c = field.element_from_text(term)
            k = 0
        if negate:
            c = field.neg_t[c]
        coeffs[k] = field.add(coeffs.get(k, 0), c)
    if not coeffs:
        return field.zero
    out = [0] * (max(coeffs) + 1)
    for k, c in coeffs.items():
        out[k] = c
    return field.poly(out)
