"""Codes over Klein's four-group K = {0, a, b, c} and over Z3.

K-symbols are stored as small integers using the bit-pair encoding
0 <-> (0,0), a <-> (0,1), b <-> (1,1), c <-> (1,0), read as a 2-bit number,
so that addition in K is bitwise XOR.  The user-facing symbol strings are
'0', 'a', 'b', 'c'.  Z3 words are tuples of integers in {0, 1, 2}.

A K-code is an additive subgroup of K^l, so it is a Z2-subspace of
Z2^(2l); a Z3-code is a Z3-subspace of Z3^l.  Both are handled by the same
small echelon-form routine over a prime field.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

K_SYMBOLS = "0abc"
# symbol -> integer code (bit pair read as binary)
K_CODE = {"0": 0, "a": 1, "b": 3, "c": 2}
K_NAME = {v: k for k, v in K_CODE.items()}
ZERO_K, A, B, C = 0, 1, 3, 2
# tau: a -> b -> c -> a
_TAU = {0: 0, A: B, B: C, C: A}
# symbol order used for choosing orbit representatives: 0 < a < b < c
_K_ORDER = {0: 0, A: 1, B: 2, C: 3}

INFINITE_WEIGHT = float("inf")

KWord = Tuple[int, ...]
Z3Word = Tuple[int, ...]


# ---------------------------------------------------------------------------
# symbol tables
# ---------------------------------------------------------------------------


def k_symbol(x) -> int:
    """Normalize a K-symbol given as 'a' or as its integer code."""
    if isinstance(x, str):
        try:
            return K_CODE[x]
        except KeyError:
            raise ValueError(f"not a K-symbol: {x!r}") from None
    if x in K_NAME:
        return x
    raise ValueError(f"not a K-symbol: {x!r}")


def k_word(w) -> KWord:
    """Parse 'aa00', ['a','a','0','0'] or integer codes into a KWord."""
    return tuple(k_symbol(x) for x in w)


def z3_word(w) -> Z3Word:
    if isinstance(w, str):
        w = [int(ch) for ch in w]
    return tuple(int(x) % 3 for x in w)


def k_str(w: KWord) -> str:
    return "".join(K_NAME[x] for x in w)


def z3_str(w: Z3Word) -> str:
    return "".join(str(x) for x in w)


def k_add(x: int, y: int) -> int:
    return x ^ y


def k_pair(x, y) -> Tuple[Fraction, int]:
    """Return (x o y, x . y) from the Klein-symbol tables.

    x o y is 1 when x = y != 0, -1/2 when x, y are distinct nonzero symbols,
    and 0 otherwise; x . y is 1 exactly for distinct nonzero symbols.
    """
    x, y = k_symbol(x), k_symbol(y)
    if x == 0 or y == 0:
        return Fraction(0), 0
    if x == y:
        return Fraction(1), 0
    return Fraction(-1, 2), 1


def k_dot(x: int, y: int) -> int:
    return 1 if (x and y and x != y) else 0


def k_inner(lam: KWord, mu: KWord) -> int:
    """<lam, mu>_K in Z2."""
    return sum(k_dot(x, y) for x, y in zip(lam, mu)) % 2


def z3_inner(g: Z3Word, d: Z3Word) -> int:
    return sum(x * y for x, y in zip(g, d)) % 3


def tau_symbol(x: int, power: int = 1) -> int:
    for _ in range(power % 3):
        x = _TAU[x]
    return x


def tau_word(w: KWord, power: int = 1) -> KWord:
    """Apply tau (a -> b -> c -> a) componentwise."""
    return tuple(tau_symbol(x, power) for x in w)


def weight(w: Sequence[int]) -> int:
    return sum(1 for x in w if x)


def support(w: Sequence[int]) -> Tuple[int, ...]:
    return tuple(i for i, x in enumerate(w) if x)


def k_neg_free_sum(u: KWord, v: KWord) -> KWord:
    return tuple(x ^ y for x, y in zip(u, v))


def z3_add(u: Z3Word, v: Z3Word) -> Z3Word:
    return tuple((x + y) % 3 for x, y in zip(u, v))


def z3_sub(u: Z3Word, v: Z3Word) -> Z3Word:
    return tuple((x - y) % 3 for x, y in zip(u, v))


def z3_scale(k: int, u: Z3Word) -> Z3Word:
    return tuple((k * x) % 3 for x in u)


# ---------------------------------------------------------------------------
# linear algebra over a prime field
# ---------------------------------------------------------------------------


def _echelon(rows: Iterable[Sequence[int]], p: int, ncols: int):
    """Reduced row echelon form over GF(p); returns (rows, pivot columns)."""
    basis: List[List[int]] = []
    pivots: List[int] = []
    for r in rows:
        v = [x % p for x in r]
        for b, pc in zip(basis, pivots):
            if v[pc]:
                f = v[pc]
                v = [(x - f * y) % p for x, y in zip(v, b)]
        lead = next((i for i, x in enumerate(v) if x), None)
        if lead is None:
            continue
        inv = pow(v[lead], -1, p)
        v = [(x * inv) % p for x in v]
        for i, b in enumerate(basis):
            if b[lead]:
                f = b[lead]
                basis[i] = [(x - f * y) % p for x, y in zip(b, v)]
        basis.append(v)
        pivots.append(lead)
    order = sorted(range(len(pivots)), key=lambda i: pivots[i])
    return [basis[i] for i in order], [pivots[i] for i in order]


def _kernel(mat: Sequence[Sequence[int]], p: int, ncols: int) -> List[List[int]]:
    """Basis of {x : mat x = 0} over GF(p)."""
    rows, piv = _echelon(mat, p, ncols)
    free = [c for c in range(ncols) if c not in piv]
    out = []
    for f in free:
        x = [0] * ncols
        x[f] = 1
        for r, pc in zip(rows, piv):
            x[pc] = (-r[f]) % p
        out.append(x)
    return out


def _k_to_bits(w: KWord) -> List[int]:
    bits = []
    for x in w:
        bits.extend(((x >> 1) & 1, x & 1))
    return bits


def _bits_to_k(bits: Sequence[int]) -> KWord:
    return tuple((bits[2 * i] << 1) | bits[2 * i + 1] for i in range(len(bits) // 2))


# ---------------------------------------------------------------------------
# Code
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Code:
    """A K-code or Z3-code given by generators (kind is 'K' or 'Z3')."""

    kind: str
    length: int
    generators: Tuple[Tuple[int, ...], ...] = ()
    _cache: Dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if self.kind not in ("K", "Z3"):
            raise ValueError(f"unknown code kind {self.kind!r}")
        gens = []
        for g in self.generators:
            g = k_word(g) if self.kind == "K" else z3_word(g)
            if len(g) != self.length:
                raise ValueError(f"generator {g} has length {len(g)}, expected {self.length}")
            gens.append(g)
        object.__setattr__(self, "generators", tuple(gens))

    # constructors -----------------------------------------------------------
    @classmethod
    def k_code(cls, length: int, generators=()) -> "Code":
        return cls("K", length, tuple(k_word(g) for g in generators))

    @classmethod
    def z3_code(cls, length: int, generators=()) -> "Code":
        return cls("Z3", length, tuple(z3_word(g) for g in generators))

    @classmethod
    def zero(cls, kind: str, length: int) -> "Code":
        return cls(kind, length, ())

    @classmethod
    def full(cls, kind: str, length: int) -> "Code":
        if kind == "K":
            gens = []
            for s in range(length):
                for sym in (A, C):
                    w = [0] * length
                    w[s] = sym
                    gens.append(tuple(w))
        else:
            gens = [tuple(1 if i == s else 0 for i in range(length)) for s in range(length)]
        return cls(kind, length, tuple(gens))

    # structure -------------------------------------------------------------
    @property
    def prime(self) -> int:
        return 2 if self.kind == "K" else 3

    def _vec(self, w) -> List[int]:
        return _k_to_bits(w) if self.kind == "K" else list(w)

    def _word(self, v) -> Tuple[int, ...]:
        return _bits_to_k(v) if self.kind == "K" else tuple(v)

    def _ncols(self) -> int:
        return 2 * self.length if self.kind == "K" else self.length

    def basis(self) -> List[Tuple[int, ...]]:
        if "basis" not in self._cache:
            rows, piv = _echelon((self._vec(g) for g in self.generators), self.prime, self._ncols())
            self._cache["basis"] = [self._word(r) for r in rows]
            self._cache["basis_vec"] = (rows, piv)
        return self._cache["basis"]

    @property
    def dimension(self) -> int:
        """Dimension over the prime field (Z2 for K-codes, Z3 otherwise)."""
        return len(self.basis())

    def __len__(self) -> int:
        return self.prime ** self.dimension

    size = property(__len__)

    def words(self) -> List[Tuple[int, ...]]:
        """All codewords, enumerated from the echelon basis."""
        if "words" not in self._cache:
            basis = self.basis()
            out = []
            zero = (0,) * self.length
            for coeffs in itertools.product(range(self.prime), repeat=len(basis)):
                w = zero
                for c, b in zip(coeffs, basis):
                    if c:
                        if self.kind == "K":
                            w = tuple(x ^ y for x, y in zip(w, b))
                        else:
                            w = tuple((x + c * y) % 3 for x, y in zip(w, b))
                out.append(w)
            self._cache["words"] = out
        return self._cache["words"]

    def __iter__(self):
        return iter(self.words())

    def __contains__(self, w) -> bool:
        w = k_word(w) if self.kind == "K" else z3_word(w)
        if len(w) != self.length:
            return False
        self.basis()
        rows, piv = self._cache["basis_vec"]
        v = self._vec(w)
        p = self.prime
        for r, pc in zip(rows, piv):
            if v[pc]:
                f = v[pc]
                v = [(x - f * y) % p for x, y in zip(v, r)]
        return not any(v)

    def inner(self, u, v) -> int:
        return k_inner(u, v) if self.kind == "K" else z3_inner(u, v)

    # duals and predicates --------------------------------------------------
    def dual(self) -> "Code":
        """Dual code with respect to <,>_K (K-codes) or the dot product (Z3)."""
        if "dual" in self._cache:
            return self._cache["dual"]
        n = self._ncols()
        if self.kind == "K":
            units = []
            for s in range(self.length):
                for sym in (C, A):  # hi bit <-> c, lo bit <-> a
                    w = [0] * self.length
                    w[s] = sym
                    units.append(tuple(w))
            mat = [[k_inner(g, u) for u in units] for g in self.basis()]
        else:
            mat = [list(g) for g in self.basis()]
        ker = _kernel(mat, self.prime, n)
        d = Code(self.kind, self.length, tuple(self._word(v) for v in ker))
        self._cache["dual"] = d
        return d

    def same_code(self, other: "Code") -> bool:
        if self.kind != other.kind or self.length != other.length:
            return False
        return self.dimension == other.dimension and all(g in self for g in other.basis())

    def is_subcode_of(self, other: "Code") -> bool:
        return all(g in other for g in self.basis())

    def is_self_orthogonal(self) -> bool:
        b = self.basis()
        return all(self.inner(u, v) == 0 for u in b for v in b)

    def is_self_dual(self) -> bool:
        return self.is_self_orthogonal() and len(self) ** 2 == self.prime ** self._ncols()

    def is_even(self) -> bool:
        """Every codeword has even weight (K-codes)."""
        return all(weight(w) % 2 == 0 for w in self.words())

    def is_tau_invariant(self) -> bool:
        if self.kind != "K":
            return True
        return all(tau_word(g) in self for g in self.basis())

    def min_weight(self):
        nz = [weight(w) for w in self.words() if any(w)]
        return min(nz) if nz else INFINITE_WEIGHT

    def tau_orbits(self) -> List[KWord]:
        """One representative for each tau-orbit of codewords (K-codes)."""
        seen = set()
        reps = []
        for w in self.words():
            if w in seen:
                continue
            orb = {w, tau_word(w, 1), tau_word(w, 2)}
            seen |= orb
            reps.append(orbit_rep(w))
        return sorted(reps, key=_k_sort_key)

    def coset_reps_in(self, ambient: "Code") -> List[Tuple[int, ...]]:
        """Representatives of ambient / self (self must be a subcode)."""
        reps = []
        seen = set()
        mine = self.words()
        for w in ambient.words():
            if w in seen:
                continue
            reps.append(w)
            for c in mine:
                seen.add(tuple((x + y) % 3 for x, y in zip(w, c)) if self.kind == "Z3"
                         else tuple(x ^ y for x, y in zip(w, c)))
        return reps

    def coset_rep(self, w) -> Tuple[int, ...]:
        """Canonical (lexicographically least) representative of w + self."""
        w = tuple(w)
        if self.kind == "Z3":
            return min(tuple((x + y) % 3 for x, y in zip(w, c)) for c in self.words())
        return min((tuple(x ^ y for x, y in zip(w, c)) for c in self.words()), key=_k_sort_key)

    def describe(self) -> str:
        show = k_str if self.kind == "K" else z3_str
        return f"{self.kind}-code of length {self.length}, size {len(self)}, generators " + (
            ", ".join(show(g) for g in self.basis()) or "(none)"
        )


def _k_sort_key(w: KWord):
    return tuple(_K_ORDER[x] for x in w)


def orbit_rep(w: KWord) -> KWord:
    """Canonical tau-orbit representative: the largest word under 0 < a < b < c."""
    return max((w, tau_word(w, 1), tau_word(w, 2)), key=_k_sort_key)


def orbit_representatives(length: int) -> List[KWord]:
    """One representative per tau-orbit of K^length (zero word first)."""
    reps = {orbit_rep(w) for w in itertools.product((0, A, B, C), repeat=length)}
    return sorted(reps, key=_k_sort_key)


def k_generated(words: Iterable) -> Code:
    words = [k_word(w) for w in words]
    return Code("K", len(words[0]), tuple(words))


def c_of(mu: KWord) -> Code:
    """The K-code generated by mu and tau(mu)."""
    mu = k_word(mu)
    return Code("K", len(mu), (mu, tau_word(mu)))


# ---------------------------------------------------------------------------
# standard examples
# ---------------------------------------------------------------------------


def tetracode() -> Code:
    """The [4,2,3] ternary tetracode."""
    return Code.z3_code(4, ["1110", (1, 2, 0, 1)])


def e8_klein_code() -> Code:
    """Length-4 tau-invariant self-dual K-code whose glue with the tetracode is E8."""
    return Code.k_code(4, ["aa00", "bb00", "00aa", "00bb"])


def repetition_z3(length: int) -> Code:
    return Code.z3_code(length, [(1,) * length])


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------


class CodeFormatError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def parse_code(text: str) -> Code:
    """Parse the three-header text format ('kind:', 'length:', 'generators:').

    Generators follow one per line with space-separated symbols.  Blank lines
    and lines starting with '#' are ignored.
    """
    lines = [(i + 1, ln) for i, ln in enumerate(text.splitlines())]
    body = [(n, ln) for n, ln in lines if ln.strip() and not ln.lstrip().startswith("#")]

    def header(idx: int, key: str) -> Tuple[int, str]:
        if idx >= len(body):
            last = body[-1][0] + 1 if body else 1
            raise CodeFormatError(f"missing '{key}:' header", last, 1)
        n, ln = body[idx]
        stripped = ln.strip()
        if not stripped.lower().startswith(key + ":"):
            col = ln.index(stripped[0]) + 1
            raise CodeFormatError(f"expected '{key}:'", n, col)
        return n, stripped[len(key) + 1 :].strip()

    n, kind = header(0, "kind")
    if kind not in ("K", "Z3"):
        raise CodeFormatError(f"kind must be K or Z3, got {kind!r}", n, body[0][1].index(":") + 2)
    n, length_s = header(1, "length")
    try:
        length = int(length_s)
        if length <= 0:
            raise ValueError
    except ValueError:
        raise CodeFormatError(f"length must be a positive integer, got {length_s!r}", n,
                              body[1][1].index(":") + 2) from None
    n, rest = header(2, "generators")
    if rest:
        raise CodeFormatError("unexpected text after 'generators:'", n, body[2][1].index(":") + 2)
    allowed = set("0abc") if kind == "K" else set("012")
    gens = []
    for n, ln in body[3:]:
        syms = []
        col = 0
        for tok in ln.split():
            col = ln.index(tok, col) + 1
            if tok not in allowed:
                raise CodeFormatError(
                    f"bad symbol {tok!r} (allowed: {' '.join(sorted(allowed))})", n, col
                )
            syms.append(tok)
            col += len(tok) - 1
        if len(syms) != length:
            raise CodeFormatError(f"generator has {len(syms)} symbols, expected {length}", n, 1)
        gens.append(syms)
    if kind == "K":
        return Code.k_code(length, gens)
    return Code.z3_code(length, [[int(s) for s in g] for g in gens])


def load_code(path) -> Code:
    with open(path, encoding="utf-8") as fh:
        return parse_code(fh.read())


BUNDLED_CODES = ("hexacode_pair", "ternary_golay")


def bundled_code_path(name: str) -> Path:
    """Path of a code file shipped with the package.

    hexacode_pair is a tau-invariant self-dual K-code of length 12 with
    minimum weight 4; ternary_golay is the self-dual [12, 6, 6] Z3-code.
    Together they glue the Leech lattice.
    """
    if name not in BUNDLED_CODES:
        raise ValueError(f"unknown bundled code {name!r}; choose from {', '.join(BUNDLED_CODES)}")
    return Path(__file__).resolve().parent / "data" / f"{name}.code"


def bundled_code(name: str) -> Code:
    return load_code(bundled_code_path(name))


def format_code(code: Code) -> str:
    show = (lambda w: " ".join(K_NAME[x] for x in w)) if code.kind == "K" else (
        lambda w: " ".join(str(x) for x in w)
    )
    lines = [f"kind: {code.kind}", f"length: {code.length}", "generators:"]
    lines += [show(g) for g in code.generators]
    return "\n".join(lines) + "\n"
