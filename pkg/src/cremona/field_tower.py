"""Exact arithmetic in F_p and its extensions F_{p^n}, n <= 16.

Field elements are represented as plain ints: the base-p little-endian
encoding of the coefficient vector of a residue polynomial.  This gives a
bijection with {0, ..., p^n - 1}; the zero and one of the field are the
ints 0 and 1, and elements of the prime subfield F_p are the ints
0, ..., p-1 in every context of the same characteristic.  A `FieldCtx`
carries the modulus and all arithmetic; a thin `FieldElement` wrapper is
provided for callers that prefer objects over (ctx, int) pairs.

For fields of size up to 2^23 the context builds discrete-log tables
(exp/log, plus Zech logarithms in odd characteristic), so that every
field operation is a few table lookups.  This covers the whole working
tower F_q c F_{q^2} c F_{q^4} c F_{q^8} for q in {2, 3, 5, 7}.  Larger
contexts fall back to polynomial arithmetic.

Subfields of F_{q^n} are not separate contexts: membership in F_{q^d}
is the predicate x^(q^d) == x, and Galois orbits are computed by
iterating the q-power Frobenius.
"""

from __future__ import annotations

import math
from array import array
from functools import lru_cache

__all__ = [
    "FieldCtx",
    "FieldElement",
    "ZeroElement",
    "element_order",
    "euler_phi",
    "find_modulus",
    "frobenius",
    "galois_orbit",
    "get_ctx",
    "nullspace",
    "rank",
]

# Above this size no log/zech tables are built and the context falls
# back to polynomial arithmetic (7^8 = 5764801 stays below the limit).
_TABLE_LIMIT = 1 << 23

# Lists are faster for scalar indexing; array('i') saves memory on the
# multi-megabyte tables of e.g. F_{7^8}.
_LIST_LIMIT = 1 << 17


class ZeroElement(ZeroDivisionError):
    """Inverse or multiplicative order of 0 was requested."""


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


def factorize(m: int) -> dict[int, int]:
    """Prime factorization by trial division (m up to ~2^50 is fine here)."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= m:
        while m % d == 0:
            out[d] = out.get(d, 0) + 1
            m //= d
        d += 1
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def euler_phi(n: int) -> int:
    """Euler totient via trial-division factorization."""
    if n < 1:
        raise ValueError("euler_phi needs n >= 1")
    out = n
    for p in factorize(n):
        out -= out // p
    return out


# ----------------------------------------------------------------------
# polynomial helpers over F_p (coefficient lists, little-endian)

def _poly_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mod(num: list[int], den: list[int], p: int) -> list[int]:
    """Remainder of num by den over F_p; den must be monic."""
    num = num[:]
    dn = len(den) - 1
    while len(num) - 1 >= dn and num:
        lead = num[-1]
        if lead:
            off = len(num) - 1 - dn
            for i, d in enumerate(den):
                num[off + i] = (num[off + i] - lead * d) % p
        num.pop()
    return _poly_trim(num)


def _poly_mulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    return _poly_mod(prod, mod, p)


def _poly_powmod(a: list[int], k: int, mod: list[int], p: int) -> list[int]:
    out = [1]
    base = _poly_mod(a[:], mod, p)
    while k:
        if k & 1:
            out = _poly_mulmod(out, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        k >>= 1
    return out


def _poly_is_irreducible(f: list[int], p: int) -> bool:
    """Exhaustive trial division by all monic divisors of degree <= deg/2."""
    n = len(f) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    if f[0] == 0:  # divisible by t
        return False
    for d in range(1, n // 2 + 1):
        for enc in range(p ** d):
            div = _decode(enc, p, d) + [1]
            if not _poly_mod(f[:], div, p):
                return False
    return True


def _decode(e: int, p: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        out.append(e % p)
        e //= p
    return out


def _encode(coeffs, p: int) -> int:
    e = 0
    for c in reversed(coeffs):
        e = e * p + c
    return e


def find_modulus(p: int, n: int) -> tuple[int, ...]:
    """The monic irreducible degree-n polynomial over F_p of minimal encoding.

    The encoding of a polynomial is the base-p little-endian value of its
    full coefficient vector (leading 1 included), so the result is a
    deterministic golden constant per (p, n).
    """
    if not _is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if not 1 <= n <= 16:
        raise ValueError("degree must be in 1..16")
    for low in range(p ** n):
        f = _decode(low, p, n) + [1]
        if _poly_is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # unreachable


# ----------------------------------------------------------------------

class FieldCtx:
    """Arithmetic context for F_{p^n} = F_p[t]/(modulus).

    All operations take and return int encodings.  Contexts are immutable
    after construction and safe to share across workers.
    """

    def __init__(self, p: int, n: int, modulus=None):
        if not _is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if not 1 <= n <= 16:
            raise ValueError("degree must be in 1..16")
        self.p = p
        self.n = n
        self.size = p ** n
        if modulus is None:
            modulus = find_modulus(p, n)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != n + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree n")
        if not _poly_is_irreducible(list(modulus), p):
            raise ValueError(f"modulus {modulus} is reducible over F_{p}")
        self.modulus = modulus
        self._units = self.size - 1
        self._exp = self._log = self._zech = None
        self._frob_table = None
        self._as_root = None
        if self.size <= _TABLE_LIMIT:
            self._build_tables()

    # -- construction of log tables ------------------------------------

    def _find_generator_poly(self) -> list[int]:
        """Smallest-encoding multiplicative generator, via polynomial pow."""
        if self._units == 1:
            return [1]
        fac = factorize(self._units)
        mod = list(self.modulus)
        for enc in range(2, self.size):
            g = _decode(enc, self.p, self.n)
            if all(
                _poly_powmod(g, self._units // ell, mod, self.p) != [1]
                for ell in fac
            ):
                return g
        raise AssertionError("no generator found")  # unreachable

    def _table_cache_path(self):
        import os

        base = os.environ.get("CREMONA_CACHE_DIR") or os.path.join(
            os.path.expanduser("~"), ".cache", "cremona"
        )
        enc = _encode(self.modulus, self.p)
        return os.path.join(base, f"gftab_p{self.p}_n{self.n}_m{enc}.npy")

    def _build_tables(self):
        import numpy as np

        p, n, units = self.p, self.n, self._units
        exp_np = None
        cache = self._table_cache_path() if self.size > (1 << 20) else None
        if cache:
            try:
                exp_np = np.load(cache).astype(np.int64)
                if len(exp_np) != units:
                    exp_np = None
            except OSError:
                exp_np = None
        if exp_np is None:
            exp_np = self._compute_exp_table(np)
            if cache:
                import os

                try:
                    os.makedirs(os.path.dirname(cache), exist_ok=True)
                    tmp = cache + ".tmp"
                    np.save(tmp, exp_np.astype(np.int32))
                    os.replace(tmp + ".npy", cache)
                except OSError:
                    pass
        self._finish_tables(np, exp_np)

    def _compute_exp_table(self, np):
        p, n, units = self.p, self.n, self._units
        g = self._find_generator_poly()
        gv = np.array(g + [0] * (n - len(g)), dtype=np.int64)

        # t^(n+i) mod f for i = 0..n-2, used to reduce degree-(2n-2) products
        base = [-c % p for c in self.modulus[:-1]]  # t^n mod f
        red = []
        cur = base[:]
        for _ in range(n - 1):
            red.append(cur[:])
            lead = cur[-1]
            cur = [0] + cur[:-1]
            if lead:
                cur = [(c + lead * r) % p for c, r in zip(cur, base)]
        # worst intermediate value during one block multiply + reduction
        bound = (p - 1) ** 2 * n * (1 + (p - 1) * (n - 1))
        dt = np.int16 if bound < 2 ** 15 else (np.int32 if bound < 2 ** 31 else np.int64)
        red_m = (np.array(red, dtype=dt) if n > 1 else np.zeros((0, 1), dtype=dt))

        def mul_block(seg, v, out):
            # out <- (seg * v) mod f, rows are coefficient vectors
            acc = np.zeros((seg.shape[0], 2 * n - 1), dtype=dt)
            for i in range(n):
                if v[i]:
                    acc[:, i:i + n] += seg * dt(v[i])
            if n > 1:
                np.mod(acc[:, :n] + acc[:, n:] @ red_m, p, out=out, casting="unsafe")
            else:
                np.mod(acc[:, :n], p, out=out, casting="unsafe")

        # block doubling in place: rows 0..m-1 hold g^0..g^(m-1)
        block = np.zeros((units, n), dtype=dt)
        block[0, 0] = 1
        gv = gv.astype(dt)
        m = 1
        while m < units:
            take = min(m, units - m)
            gm = np.zeros((1, n), dtype=dt)
            mul_block(block[m - 1: m], gv, gm)  # g^m
            mul_block(block[:take], gm[0], block[m: m + take])
            m += take

        pows = np.array([p ** i for i in range(n)], dtype=np.int64)
        return block.astype(np.int64) @ pows

    def _finish_tables(self, np, exp_np):
        p, units = self.p, self._units
        log_np = np.empty(self.size, dtype=np.int64)
        log_np[0] = 0  # never read: all ops guard zero explicitly
        log_np[exp_np] = np.arange(units, dtype=np.int64)

        zech_np = None
        if p != 2:
            c0 = exp_np % p
            plus1 = np.where(c0 < p - 1, exp_np + 1, exp_np - (p - 1))
            idx = np.where(plus1 == 0, 1, plus1)
            zech_np = np.where(plus1 == 0, -1, log_np[idx])

        exp2 = np.concatenate([exp_np, exp_np])
        if self.size <= _LIST_LIMIT:
            self._exp = exp2.tolist()
            self._log = log_np.tolist()
            self._zech = zech_np.tolist() if zech_np is not None else None
            ft = np.empty(self.size, dtype=np.int64)
            ft[0] = 0
            ft[exp_np] = exp_np[(np.arange(units) * p) % units]
            self._frob_table = ft.tolist()
        else:
            self._exp = array("q", exp2.tobytes())
            self._log = array("q", log_np.tobytes())
            self._zech = array("q", zech_np.tobytes()) if zech_np is not None else None

    # -- scalar arithmetic on encodings ---------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self._exp is None:
            return self._add_poly(a, b)
        if a == 0:
            return b
        if b == 0:
            return a
        la, lb = self._log[a], self._log[b]
        d = lb - la
        if d < 0:
            d += self._units
        z = self._zech[d]
        if z < 0:
            return 0
        return self._exp[la + z]

    def neg(self, a: int) -> int:
        if self.p == 2 or a == 0:
            return a
        if self._exp is None:
            return self._neg_poly(a)
        return self._exp[self._log[a] + self._units // 2]

    def sub(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._exp is None:
            return self._mul_poly(a, b)
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroElement("inverse of zero")
        if self._exp is None:
            return self._inv_poly(a)
        return self._exp[self._units - self._log[a]]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k == 0:
                return 1
            if k < 0:
                raise ZeroElement("negative power of zero")
            return 0
        if self._exp is None:
            if k < 0:
                return self._inv_poly(self._pow_poly(a, -k))
            return self._pow_poly(a, k)
        return self._exp[(self._log[a] * k) % self._units]

    def frobenius(self, a: int) -> int:
        """x -> x^p, the generating field automorphism."""
        if self._frob_table is not None:
            return self._frob_table[a]
        return self.pow(a, self.p)

    def frobenius_iter(self, a: int, i: int) -> int:
        """x -> x^(p^i)."""
        if self._exp is not None and a != 0:
            return self._exp[(self._log[a] * pow(self.p, i, self._units)) % self._units]
        for _ in range(i):
            a = self.frobenius(a)
        return a

    def in_subfield(self, a: int, d: int) -> bool:
        """Membership in F_{p^d} inside this field (x^(p^d) == x)."""
        return self.frobenius_iter(a, d) == a

    def order(self, a: int) -> int:
        """Multiplicative order, via factorization of p^n - 1."""
        if a == 0:
            raise ZeroElement("order of zero")
        if self._exp is not None:
            return self._units // math.gcd(self._log[a], self._units)
        m = self._units
        for ell, e in factorize(self._units).items():
            for _ in range(e):
                if self.pow(a, m // ell) == 1:
                    m //= ell
                else:
                    break
        return m

    def sqrt(self, a: int):
        """A square root of a, or None if a is not a square."""
        if a == 0:
            return 0
        if self.p == 2:
            return self.pow(a, self.size // 2)  # Frobenius inverse
        if self._exp is None:
            raise NotImplementedError("sqrt needs log tables")
        la = self._log[a]
        if la % 2:
            return None
        return self._exp[la // 2]

    def quadratic_roots(self, a: int, b: int, c: int):
        """Roots in the field of a*y^2 + b*y + c.

        Returns a list of roots (without multiplicity), or None when the
        polynomial is identically zero (every element is a root).
        """
        if a == 0:
            if b == 0:
                return None if c == 0 else []
            return [self.div(self.neg(c), b)]
        if self.p == 2:
            if b == 0:
                return [self.sqrt(self.div(c, a))]
            if self._as_root is None:
                self._build_as_table()
            w = self.mul(self.mul(c, a), self.pow(self.inv(b), 2))
            u = self._as_root[w]
            if u < 0:
                return []
            t = self.div(b, a)
            return [self.mul(t, u), self.mul(t, u ^ 1)]
        disc = self.sub(self.mul(b, b), self.mul(4 % self.p, self.mul(a, c)))
        s = self.sqrt(disc)
        if s is None:
            return []
        inv2a = self.inv(self.mul(2 % self.p, a))
        r1 = self.mul(self.add(self.neg(b), s), inv2a)
        if s == 0:
            return [r1]
        r2 = self.mul(self.sub(self.neg(b), s), inv2a)
        return [r1, r2]

    def _build_as_table(self):
        # u^2 + u = v has solutions {u, u+1}; store one representative.
        tab = [-1] * self.size
        for u in range(self.size):
            v = self.mul(u, u) ^ u
            if tab[v] < 0:
                tab[v] = u
        self._as_root = tab

    # -- fallback polynomial arithmetic (size > _TABLE_LIMIT) -----------

    def _coeffs(self, a: int) -> list[int]:
        return _decode(a, self.p, self.n)

    def _add_poly(self, a: int, b: int) -> int:
        p = self.p
        ca, cb = self._coeffs(a), self._coeffs(b)
        return _encode([(x + y) % p for x, y in zip(ca, cb)], p)

    def _neg_poly(self, a: int) -> int:
        p = self.p
        return _encode([(-x) % p for x in self._coeffs(a)], p)

    def _mul_poly(self, a: int, b: int) -> int:
        r = _poly_mulmod(self._coeffs(a), self._coeffs(b), list(self.modulus), self.p)
        return _encode(r + [0] * (self.n - len(r)), self.p)

    def _pow_poly(self, a: int, k: int) -> int:
        r = _poly_powmod(self._coeffs(a), k, list(self.modulus), self.p)
        return _encode(r + [0] * (self.n - len(r)), self.p)

    def _inv_poly(self, a: int) -> int:
        # extended Euclid in F_p[t]
        p = self.p
        r0, r1 = list(self.modulus), _poly_trim(self._coeffs(a))
        s0, s1 = [], [1]
        while r1:
            q, rem = self._poly_divmod(r0, r1, p)
            r0, r1 = r1, rem
            s0, s1 = s1, self._poly_sub(s0, self._poly_mul_plain(q, s1), p)
        lead_inv = pow(r0[-1], -1, p)
        s0 = [(c * lead_inv) % p for c in s0]
        return _encode(s0 + [0] * (self.n - len(s0)), p)

    @staticmethod
    def _poly_divmod(num, den, p):
        num = num[:]
        quot = [0] * max(1, len(num) - len(den) + 1)
        dinv = pow(den[-1], -1, p)
        while num and len(num) >= len(den):
            coef = (num[-1] * dinv) % p
            off = len(num) - len(den)
            quot[off] = coef
            for i, d in enumerate(den):
                num[off + i] = (num[off + i] - coef * d) % p
            _poly_trim(num)
        return _poly_trim(quot), num

    @staticmethod
    def _poly_mul_plain(a, b, p=None):
        if not a or not b:
            return []
        p = p
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return out

    def _poly_sub(self, a, b, p):
        m = max(len(a), len(b))
        a = a + [0] * (m - len(a))
        b = b + [0] * (m - len(b))
        return _poly_trim([(x - y) % p for x, y in zip(a, b)])

    # -- element interface ----------------------------------------------

    def element(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.ctx is not self:
                raise ValueError("element from a different context")
            return value
        if isinstance(value, int):
            return FieldElement(self, value % self.size if value < 0 else value)
        return FieldElement(self, _encode(list(value), self.p))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def elements(self):
        """All encodings 0..p^n-1 (the decode(encode) bijection)."""
        return range(self.size)

    def coeffs(self, a: int) -> tuple[int, ...]:
        return tuple(_decode(a, self.p, self.n))

    def to_json(self) -> dict:
        return {"p": self.p, "n": self.n, "modulus": list(self.modulus)}

    def __repr__(self):
        return f"FieldCtx(p={self.p}, n={self.n})"

    def __eq__(self, other):
        return (
            isinstance(other, FieldCtx)
            and (self.p, self.n, self.modulus) == (other.p, other.n, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.n, self.modulus))


@lru_cache(maxsize=None)
def get_ctx(p: int, n: int) -> FieldCtx:
    """Shared context with the canonical (minimal-encoding) modulus."""
    return FieldCtx(p, n)


class FieldElement:
    """An element of F_{p^n}: a context plus its int encoding."""

    __slots__ = ("ctx", "e")

    def __init__(self, ctx: FieldCtx, e: int):
        self.ctx = ctx
        self.e = e

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise ValueError("mixed field contexts")
            return other.e
        if isinstance(other, int):
            return other % self.ctx.p
        return NotImplemented

    def __add__(self, other):
        return FieldElement(self.ctx, self.ctx.add(self.e, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.ctx, self.ctx.sub(self.e, self._coerce(other)))

    def __rsub__(self, other):
        return FieldElement(self.ctx, self.ctx.sub(self._coerce(other), self.e))

    def __mul__(self, other):
        return FieldElement(self.ctx, self.ctx.mul(self.e, self._coerce(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.ctx, self.ctx.div(self.e, self._coerce(other)))

    def __rtruediv__(self, other):
        return FieldElement(self.ctx, self.ctx.div(self._coerce(other), self.e))

    def __pow__(self, k: int):
        return FieldElement(self.ctx, self.ctx.pow(self.e, k))

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg(self.e))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.e == other % self.ctx.p
        return (
            isinstance(other, FieldElement)
            and self.ctx == other.ctx
            and self.e == other.e
        )

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.n, self.e))

    def __bool__(self):
        return self.e != 0

    def __int__(self):
        return self.e

    def __repr__(self):
        return f"F({self.ctx.p}^{self.ctx.n})#{self.e}"

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.ctx.coeffs(self.e)

    def frobenius(self, times: int = 1) -> "FieldElement":
        return FieldElement(self.ctx, self.ctx.frobenius_iter(self.e, times))

    def order(self) -> int:
        return self.ctx.order(self.e)

    def in_subfield(self, d: int) -> bool:
        return self.ctx.in_subfield(self.e, d)


def frobenius(x: FieldElement, times: int = 1) -> FieldElement:
    """x^(q^times) for q = p; a field automorphism fixing F_q pointwise."""
    return x.frobenius(times)


def galois_orbit(x: FieldElement) -> list[FieldElement]:
    """[x, x^q, x^(q^2), ...] up to the first repetition."""
    ctx = x.ctx
    out = [x.e]
    cur = ctx.frobenius(x.e)
    while cur != x.e:
        out.append(cur)
        cur = ctx.frobenius(cur)
    return [FieldElement(ctx, e) for e in out]


def element_order(x: FieldElement) -> int:
    return x.order()


# ----------------------------------------------------------------------
# exact linear algebra over a field context

def _as_rows(matrix, ctx):
    if ctx is None:
        first = matrix[0][0]
        ctx = first.ctx
        rows = [[int(v.e) for v in row] for row in matrix]
    else:
        rows = [[int(v) for v in row] for row in matrix]
    return rows, ctx


def _rref(rows, ctx):
    """In-place reduced row echelon form; returns the list of pivot columns.

    Pivot choice is deterministic: for each column in order, the first
    remaining row with a nonzero entry.
    """
    mul, sub, inv = ctx.mul, ctx.sub, ctx.inv
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = inv(rows[r][c])
        if piv != 1:
            rows[r] = [mul(piv, v) for v in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                ri, rr = rows[i], rows[r]
                rows[i] = [sub(ri[j], mul(f, rr[j])) for j in range(ncols)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def rank(matrix, ctx=None) -> int:
    rows, ctx = _as_rows(matrix, ctx)
    if not rows:
        return 0
    return len(_rref(rows, ctx))


def nullspace(matrix, ctx=None):
    """Basis of the right kernel, in reduced echelon form.

    `matrix` is either a grid of FieldElement or a grid of int encodings
    with an explicit ctx.  The result uses the same convention as the
    input (FieldElement grids give FieldElement vectors).
    """
    wrap = ctx is None
    rows, ctx = _as_rows(matrix, ctx)
    if not rows:
        return []
    ncols = len(rows[0])
    pivots = _rref(rows, ctx)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * ncols
        vec[fc] = 1
        for r, pc in enumerate(pivots):
            vec[pc] = ctx.neg(rows[r][fc])
        basis.append(vec)
    if wrap:
        return [[FieldElement(ctx, e) for e in vec] for vec in basis]
    return basis
