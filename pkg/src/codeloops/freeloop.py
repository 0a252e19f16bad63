"""Free loop on n generators in the variety generated by code loops.

Elements are single ints packing four bit blocks: the generator support
(low n bits) and a central part made of a square block (n bits), a pair
block (C(n,2) bits, 2-subsets lexicographic) and a triple block (C(n,3)
bits, 3-subsets lexicographic).  The product of two supports picks up a
central correction (``delta``); multiplication of full elements is then
three XORs against a memoized per-rank delta table.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Callable, List, NamedTuple, Optional, Tuple

import numpy as np

from .gf2 import bits_of, pair_list, pair_pos, triple_list, triple_pos

MAX_RANK = 8
MAX_EXHAUSTIVE_RANK = 3
MAX_SAMPLED_RANK = 5
DEFAULT_SAMPLES = 10_000_000


class CentralVector(NamedTuple):
    """Central part of a free-loop element, one bitmask per basis block."""

    bar: int
    wedge2: int
    wedge3: int

    def __xor__(self, other: "CentralVector") -> "CentralVector":
        return CentralVector(
            self.bar ^ other.bar,
            self.wedge2 ^ other.wedge2,
            self.wedge3 ^ other.wedge3,
        )

    def is_zero(self) -> bool:
        return not (self.bar or self.wedge2 or self.wedge3)


ZERO_CENTRAL = CentralVector(0, 0, 0)


@dataclass
class Check:
    name: str
    passed: bool
    scope: str
    witness: Optional[dict] = None


@dataclass
class CenterReport:
    n: int
    exhaustive: bool
    center_size: int
    expected_size: int
    central_supports: Tuple[int, ...]
    passed: bool


@dataclass
class SuiteReport:
    n: int
    mode: str
    seed: Optional[int]
    samples: Optional[int]
    moufang_tuples: int
    checks: List[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def first_failure(self) -> Optional[Check]:
        for c in self.checks:
            if not c.passed:
                return c
        return None


def _delta_parts(n: int, sigma: int, mu: int) -> CentralVector:
    """Central correction of the support product sigma * mu."""
    ppos = pair_pos(n)
    tpos = triple_pos(n)
    bar = sigma & mu
    w2 = 0
    for i in bits_of(sigma):
        for j in bits_of(mu):
            if i > j:
                w2 ^= 1 << ppos[(j, i)]
    mu_pairs = [(j, k) for j in bits_of(mu) for k in bits_of(mu) if j < k]
    w3 = 0
    for i in bits_of(sigma):
        for j, k in mu_pairs:
            if i != j and i != k:
                w3 ^= 1 << tpos[tuple(sorted((i, j, k)))]
    return CentralVector(bar, w2, w3)


class FreeLoop:
    """Rank-n free loop with packed-int elements and a memoized delta table.

    ``delta_fn`` overrides the central-correction rule; only used as a
    negative control in tests.
    """

    def __init__(self, n: int, delta_fn: Optional[Callable[[int, int, int], CentralVector]] = None):
        if not 1 <= n <= MAX_RANK:
            raise ValueError(f"rank must be in 1..{MAX_RANK}, got {n}")
        self.n = n
        self.n_pairs = comb(n, 2)
        self.n_triples = comb(n, 3)
        self.central_bits = n + self.n_pairs + self.n_triples
        self.total_bits = n + self.central_bits
        self.size = 1 << self.total_bits
        self.center_size = 1 << self.central_bits
        self.support_mask = (1 << n) - 1
        self.identity = 0
        self._bar_off = n
        self._w2_off = 2 * n
        self._w3_off = 2 * n + self.n_pairs
        fn = delta_fn or _delta_parts
        # delta table in element layout (central blocks already shifted past support)
        self._delta = [
            [self._pack_central(fn(n, s, m)) for m in range(1 << n)]
            for s in range(1 << n)
        ]
        self._delta_np = None

    # -- packing ------------------------------------------------------

    def _pack_central(self, cv: CentralVector) -> int:
        return (
            (cv.bar << self._bar_off)
            | (cv.wedge2 << self._w2_off)
            | (cv.wedge3 << self._w3_off)
        )

    def element(self, support: int = 0, bar: int = 0, wedge2: int = 0, wedge3: int = 0) -> int:
        for value, width, what in (
            (support, self.n, "support"),
            (bar, self.n, "bar"),
            (wedge2, self.n_pairs, "wedge2"),
            (wedge3, self.n_triples, "wedge3"),
        ):
            if value >> width:
                raise ValueError(f"{what} mask {value:#x} out of range for rank {self.n}")
        return support | self._pack_central(CentralVector(bar, wedge2, wedge3))

    def generator(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise ValueError(f"generator index {i} out of range")
        return 1 << i

    def support(self, x: int) -> int:
        return x & self.support_mask

    def central_vector(self, x: int) -> CentralVector:
        return CentralVector(
            (x >> self._bar_off) & self.support_mask,
            (x >> self._w2_off) & ((1 << self.n_pairs) - 1),
            (x >> self._w3_off) & ((1 << self.n_triples) - 1),
        )

    def functional_bits(self, x: int) -> int:
        """Central part of x re-based at bit 0 (functional layout)."""
        return x >> self.n

    def is_central(self, x: int) -> bool:
        return self.support(x) == 0

    def _check_element(self, x: int) -> None:
        if not 0 <= x < self.size:
            raise ValueError(f"element {x:#x} does not belong to the rank-{self.n} loop")

    # -- arithmetic ---------------------------------------------------

    def delta(self, sigma: int, mu: int) -> CentralVector:
        if sigma >> self.n or mu >> self.n:
            raise ValueError("support rank mismatch")
        packed = self._delta[sigma][mu]
        return self.central_vector(packed)

    def delta_packed(self, sigma: int, mu: int) -> int:
        return self._delta[sigma][mu]

    def mul(self, x: int, y: int) -> int:
        self._check_element(x)
        self._check_element(y)
        return x ^ y ^ self._delta[x & self.support_mask][y & self.support_mask]

    def inverse(self, x: int) -> int:
        self._check_element(x)
        s = x & self.support_mask
        return x ^ self._delta[s][s]

    def square(self, x: int) -> int:
        s = x & self.support_mask
        return self._delta[s][s]

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inverse(x), -k
        acc = self.identity
        for _ in range(k):
            acc = self.mul(acc, x)
        return acc

    def commutator(self, x: int, y: int) -> CentralVector:
        """[x,y] = x^-1 y^-1 x y; central, so returned as its central part."""
        t = self.mul(self.mul(self.mul(self.inverse(x), self.inverse(y)), x), y)
        assert self.support(t) == 0
        return self.central_vector(t)

    def associator(self, x: int, y: int, z: int) -> CentralVector:
        """(x,y,z) = ((xy)z) * (x(yz))^-1; central."""
        t = self.mul(
            self.mul(self.mul(x, y), z),
            self.inverse(self.mul(x, self.mul(y, z))),
        )
        assert self.support(t) == 0
        return self.central_vector(t)

    def elements(self) -> range:
        return range(self.size)

    # -- numpy kernels ------------------------------------------------

    def _dtype(self):
        return np.uint16 if self.total_bits <= 16 else np.uint32

    def _tables_np(self):
        if self._delta_np is None:
            dt = self._dtype()
            m = 1 << self.n
            D = np.array(self._delta, dtype=dt)
            diag = np.array([self._delta[s][s] for s in range(m)], dtype=dt)
            self._delta_np = (D, diag)
        return self._delta_np

    def nmul(self, a, b):
        D, _ = self._tables_np()
        return a ^ b ^ D[a & self.support_mask, b & self.support_mask]

    def ninv(self, a):
        _, diag = self._tables_np()
        return a ^ diag[a & self.support_mask]

    def ncomm(self, a, b):
        return self.nmul(self.nmul(self.nmul(self.ninv(a), self.ninv(b)), a), b)

    def nassoc(self, a, b, c):
        return self.nmul(
            self.nmul(self.nmul(a, b), c),
            self.ninv(self.nmul(a, self.nmul(b, c))),
        )

    # support-indexed value tables (scalar, small)

    @property
    def comm_table(self):
        """comm_table[s][m]: packed commutator value of pure-support elements."""
        if not hasattr(self, "_comm_table"):
            m = 1 << self.n
            self._comm_table = [
                [
                    self.mul(self.mul(self.mul(self.inverse(s), self.inverse(t)), s), t)
                    for t in range(m)
                ]
                for s in range(m)
            ]
        return self._comm_table

    @property
    def assoc_table(self):
        """assoc_table[s][m][l]: packed associator value of pure supports."""
        if not hasattr(self, "_assoc_table"):
            m = 1 << self.n
            self._assoc_table = [
                [
                    [
                        self.mul(
                            self.mul(self.mul(a, b), c),
                            self.inverse(self.mul(a, self.mul(b, c))),
                        )
                        for c in range(m)
                    ]
                    for b in range(m)
                ]
                for a in range(m)
            ]
        return self._assoc_table

    # -- verification sweeps -------------------------------------------

    def center_check(self, exhaustive: bool = True) -> CenterReport:
        """Verify the center is exactly the empty-support slice."""
        if exhaustive and self.n > MAX_EXHAUSTIVE_RANK:
            raise ValueError(f"exhaustive center check limited to rank {MAX_EXHAUSTIVE_RANK}")
        if exhaustive:
            ok_comm, _ = _sweep_commutators(self)
            ok_assoc, _ = _sweep_associators(self)
            if not (ok_comm and ok_assoc):
                raise AssertionError("support determination failed; loop tables corrupt")
        central_supports = []
        m = 1 << self.n
        C2, A3 = self.comm_table, self.assoc_table
        for s in range(m):
            if any(C2[s][t] for t in range(m)):
                continue
            if any(
                A3[x][y][z]
                for (x, y, z) in _slot_triples(s, m)
            ):
                continue
            central_supports.append(s)
        size = len(central_supports) << self.central_bits
        expected = 1 << self.central_bits
        return CenterReport(
            n=self.n,
            exhaustive=exhaustive,
            center_size=size,
            expected_size=expected,
            central_supports=tuple(central_supports),
            passed=(central_supports == [0] and size == expected),
        )

    def identity_suite(
        self,
        mode: str = "exhaustive",
        seed: Optional[int] = None,
        samples: Optional[int] = None,
    ) -> SuiteReport:
        if mode not in ("exhaustive", "sampled"):
            raise ValueError(f"unknown mode {mode!r}")
        if mode == "exhaustive":
            if self.n > MAX_EXHAUSTIVE_RANK:
                raise ValueError(
                    f"exhaustive suite limited to rank {MAX_EXHAUSTIVE_RANK}; use sampled mode"
                )
            return _suite_exhaustive(self)
        if seed is None:
            raise ValueError("sampled mode requires a seed; reports must be reproducible")
        if self.n > MAX_SAMPLED_RANK:
            raise ValueError(f"sampled suite limited to rank {MAX_SAMPLED_RANK}")
        return _suite_sampled(self, seed, samples or DEFAULT_SAMPLES)


def _slot_triples(s: int, m: int):
    for y in range(m):
        for z in range(m):
            yield (s, y, z)
            yield (y, s, z)
            yield (y, z, s)


@lru_cache(maxsize=None)
def free_loop(n: int) -> FreeLoop:
    return FreeLoop(n)


# module-level conveniences mirroring the loop methods


def delta(sigma: int, mu: int, n: int) -> CentralVector:
    return free_loop(n).delta(sigma, mu)


def mul(x: int, y: int, n: int) -> int:
    return free_loop(n).mul(x, y)


def inverse(x: int, n: int) -> int:
    return free_loop(n).inverse(x)


def commutator(x: int, y: int, n: int) -> CentralVector:
    return free_loop(n).commutator(x, y)


def associator(x: int, y: int, z: int, n: int) -> CentralVector:
    return free_loop(n).associator(x, y, z)


def center_check(n: int, exhaustive: bool = True) -> CenterReport:
    return free_loop(n).center_check(exhaustive=exhaustive)


def identity_suite(
    n: int,
    mode: str = "exhaustive",
    seed: Optional[int] = None,
    samples: Optional[int] = None,
    delta_fn=None,
) -> SuiteReport:
    loop = FreeLoop(n, delta_fn=delta_fn) if delta_fn else free_loop(n)
    return loop.identity_suite(mode=mode, seed=seed, samples=samples)


# ---------------------------------------------------------------------
# exhaustive sweeps (numpy, blocked by support so delta terms are scalars)
# ---------------------------------------------------------------------


def _centrals_for(loop: FreeLoop, support: int):
    dt = loop._dtype()
    c = np.arange(1 << loop.central_bits, dtype=dt)
    return (c << loop.n) | dt(support)


def _sweep_moufang(loop: FreeLoop):
    """(xy)(zx) == (x(yz))x over every full triple. Returns (ok, witness, count)."""
    m = 1 << loop.n
    D = loop._delta
    count = 0
    for sx in range(m):
        X = _centrals_for(loop, sx)
        for sy in range(m):
            Y = _centrals_for(loop, sy)
            XY = X[:, None] ^ Y[None, :] ^ int(D[sx][sy])
            for sz in range(m):
                Z = _centrals_for(loop, sz)
                ZX = Z[:, None] ^ X[None, :] ^ int(D[sz][sx])
                lhs = XY[:, :, None] ^ ZX.T[:, None, :] ^ int(D[sx ^ sy][sz ^ sx])
                YZ = Y[:, None] ^ Z[None, :] ^ int(D[sy][sz])
                XYZ = X[:, None, None] ^ YZ[None, :, :] ^ int(D[sx][sy ^ sz])
                rhs = XYZ ^ X[:, None, None] ^ int(D[sx ^ sy ^ sz][sx])
                count += lhs.size
                if not np.array_equal(lhs, rhs):
                    ix, iy, iz = map(int, np.argwhere(lhs != rhs)[0])
                    return False, {
                        "x": int(X[ix]),
                        "y": int(Y[iy]),
                        "z": int(Z[iz]),
                        "lhs": int(lhs[ix, iy, iz]),
                        "rhs": int(rhs[ix, iy, iz]),
                    }, count
    return True, None, count


def _sweep_commutators(loop: FreeLoop):
    """All full pairs: [x,y] central, square 1, equal to the support table."""
    m = 1 << loop.n
    D = loop._delta
    C2 = loop.comm_table
    for sx in range(m):
        X = _centrals_for(loop, sx)
        xinv = X ^ int(D[sx][sx])
        for sy in range(m):
            Y = _centrals_for(loop, sy)
            yinv = Y ^ int(D[sy][sy])
            t = xinv[:, None] ^ yinv[None, :] ^ int(D[sx][sy])
            t = t ^ X[:, None] ^ int(D[sx ^ sy][sx])
            t = t ^ Y[None, :] ^ int(D[sy][sy])
            if not np.all(t == C2[sx][sy]):
                ix, iy = map(int, np.argwhere(t != C2[sx][sy])[0])
                return False, {"x": int(X[ix]), "y": int(Y[iy]), "value": int(t[ix, iy])}
    return True, None


def _sweep_associators(loop: FreeLoop):
    """All full triples: (x,y,z) central, equal to the support table."""
    m = 1 << loop.n
    D = loop._delta
    A3 = loop.assoc_table
    for sx in range(m):
        X = _centrals_for(loop, sx)
        for sy in range(m):
            Y = _centrals_for(loop, sy)
            XY = X[:, None] ^ Y[None, :] ^ int(D[sx][sy])
            for sz in range(m):
                Z = _centrals_for(loop, sz)
                s = sx ^ sy ^ sz
                t1 = XY[:, :, None] ^ Z[None, None, :] ^ int(D[sx ^ sy][sz])
                YZ = Y[:, None] ^ Z[None, :] ^ int(D[sy][sz])
                t2 = X[:, None, None] ^ YZ[None, :, :] ^ int(D[sx][sy ^ sz])
                t2 ^= int(D[s][s])  # inverse
                val = t1 ^ t2 ^ int(D[s][s])
                if not np.all(val == A3[sx][sy][sz]):
                    ix, iy, iz = map(int, np.argwhere(val != A3[sx][sy][sz])[0])
                    return False, {
                        "x": int(X[ix]),
                        "y": int(Y[iy]),
                        "z": int(Z[iz]),
                        "value": int(val[ix, iy, iz]),
                    }
    return True, None


def _sweep_central_annihilation(loop: FreeLoop):
    """[z,y]=1 and (z,..)=1 in all three slots, all central z x all elements."""
    m = 1 << loop.n
    D = loop._delta
    Zc = _centrals_for(loop, 0)
    # commutators with central slot
    for sy in range(m):
        Y = _centrals_for(loop, sy)
        yinv = Y ^ int(D[sy][sy])
        t = Zc[:, None] ^ yinv[None, :]
        t = t ^ Zc[:, None] ^ int(D[sy][0])
        t = t ^ Y[None, :] ^ int(D[sy][sy])
        if np.any(t):
            return False, {"check": "comm", "sy": sy}
    # associators with a central argument, each slot
    for sy in range(m):
        Y = _centrals_for(loop, sy)
        for sz in range(m):
            Z = _centrals_for(loop, sz)
            s = sy ^ sz
            YZ = Y[:, None] ^ Z[None, :] ^ int(D[sy][sz])
            dss = int(D[s][s])
            # slot 1: (c, y, z)
            t1 = Zc[:, None, None] ^ YZ[None, :, :] ^ 0  # (c*y)*z with D[0,sy]=D[sy,sz] folded
            t1 = Zc[:, None, None] ^ (Y[:, None] ^ int(D[sy][sz]))[None, :, :] ^ Z[None, None, :]
            t2 = Zc[:, None, None] ^ YZ[None, :, :]
            val = t1 ^ (t2 ^ dss) ^ dss
            if np.any(val):
                return False, {"check": "assoc-slot1", "sy": sy, "sz": sz}
            # slot 2: (y, c, z)
            t1 = (Y[:, None] ^ Zc[None, :] ^ int(D[sy][0]))[:, :, None] ^ Z[None, None, :] ^ int(D[sy][sz])
            t2 = Y[:, None, None] ^ (Zc[:, None] ^ Z[None, :] ^ int(D[0][sz]))[None, :, :] ^ int(D[sy][sz])
            val = t1 ^ (t2 ^ dss) ^ dss
            if np.any(val):
                return False, {"check": "assoc-slot2", "sy": sy, "sz": sz}
            # slot 3: (y, z, c)
            t1 = YZ[:, :, None] ^ Zc[None, None, :] ^ int(D[s][0])
            t2 = Y[:, None, None] ^ (Z[:, None] ^ Zc[None, :] ^ int(D[sz][0]))[None, :, :] ^ int(D[sy][sz])
            val = t1 ^ (t2 ^ dss) ^ dss
            if np.any(val):
                return False, {"check": "assoc-slot3", "sy": sy, "sz": sz}
    return True, None


def _lemma_tables(loop: FreeLoop):
    """Support-level bracket tables for the structural identities."""
    n = loop.n
    m = 1 << n
    ppos = pair_pos(n)
    tpos = triple_pos(n)
    B2 = np.zeros((m, m), dtype=np.uint32)
    for s in range(m):
        for t in range(m):
            w = 0
            for i in bits_of(s):
                for j in bits_of(t):
                    if i > j:
                        w ^= 1 << ppos[(j, i)]
            B2[s, t] = w
    B3 = np.zeros((m, m, m), dtype=np.uint64)
    for a in range(m):
        for b in range(m):
            for c in range(m):
                w = 0
                for j in bits_of(b):
                    for k in bits_of(c):
                        if j < k:
                            for i in bits_of(a):
                                if i != j and i != k:
                                    w ^= 1 << tpos[tuple(sorted((i, j, k)))]
                B3[a, b, c] = w
    return B2, B3


def lemma_identities(n: int) -> List[Check]:
    """Six support-level identity families over all (sigma,mu,lambda,tau) tuples."""
    loop = free_loop(n)
    B2, B3 = _lemma_tables(loop)
    m = 1 << n
    idx = np.arange(m**4, dtype=np.int64)
    s = (idx & (m - 1)).astype(np.int64)
    mu = ((idx >> n) & (m - 1)).astype(np.int64)
    la = ((idx >> (2 * n)) & (m - 1)).astype(np.int64)
    ta = ((idx >> (3 * n)) & (m - 1)).astype(np.int64)
    scope = f"all {m}^4 support tuples"
    checks = []

    def add(name, lhs, rhs):
        ok = np.array_equal(lhs, rhs)
        witness = None
        if not ok:
            i = int(np.argwhere(lhs != rhs)[0][0])
            witness = {"sigma": int(s[i]), "mu": int(mu[i]), "lambda": int(la[i]), "tau": int(ta[i])}
        checks.append(Check(name, ok, scope, witness))

    add(
        "brace-cocycle",
        (s & mu) ^ (s & la) ^ ((s ^ mu) & (la ^ s)),
        (la & mu) ^ (s & (la ^ mu)) ^ ((s ^ mu ^ la) & s),
    )
    add(
        "pair-cocycle",
        B2[s, mu] ^ B2[la, s] ^ B2[s ^ mu, la ^ s],
        B2[mu, la] ^ B2[s, la ^ mu] ^ B2[s ^ mu ^ la, s],
    )
    add(
        "triple-linearity",
        np.concatenate([B3[la ^ ta, mu, s], B3[s, la ^ ta, mu], B3[s, mu, la ^ ta]]),
        np.concatenate(
            [
                B3[la, mu, s] ^ B3[ta, mu, s],
                B3[s, la, mu] ^ B3[s, ta, mu],
                B3[s, mu, la] ^ B3[s, mu, ta],
            ]
        ),
    )
    zero = np.zeros_like(idx, dtype=np.uint64)
    add("triple-alternating-pair", B3[s, la, s] ^ B3[s, s, la], zero)
    add(
        "triple-alternating-quad",
        B3[s, la, mu] ^ B3[mu, la, s] ^ B3[s, mu, la] ^ B3[mu, s, la],
        zero,
    )
    add(
        "triple-sixfold",
        B3[s ^ mu, la ^ s, la ^ s]
        ^ B3[s, mu, mu]
        ^ B3[la, s, s]
        ^ B3[s ^ mu ^ la, s, s]
        ^ B3[s, mu ^ la, mu ^ la]
        ^ B3[mu, la, la],
        zero,
    )
    return checks


def _expansion_law_checks(loop: FreeLoop, exhaustive: bool, rng=None, samples: int = 0) -> List[Check]:
    """[xy,z]=[x,z][y,z](x,y,z); (wx,y,z)=(w,y,z)(x,y,z); (xy)^2=x^2 y^2 [x,y]."""
    m = 1 << loop.n
    D = loop._delta
    checks = []
    if exhaustive:
        # pair law over all full pairs
        ok = True
        wit = None
        for sx in range(m):
            X = _centrals_for(loop, sx)
            for sy in range(m):
                Y = _centrals_for(loop, sy)
                sq_xy = int(D[sx ^ sy][sx ^ sy])
                comm = _comm_grid(loop, X, sx, Y, sy)
                rhs = comm ^ int(D[sx][sx]) ^ int(D[sy][sy])
                if not np.all(rhs == sq_xy):
                    ok = False
                    ix, iy = map(int, np.argwhere(rhs != sq_xy)[0])
                    wit = {"x": int(X[ix]), "y": int(Y[iy])}
                    break
            if not ok:
                break
        checks.append(Check("square-expansion", ok, f"all {loop.size}^2 pairs", wit))

        # commutator law over all full triples
        ok = True
        wit = None
        A3 = loop.assoc_table
        C2 = loop.comm_table
        for sx in range(m):
            X = _centrals_for(loop, sx)
            for sy in range(m):
                Y = _centrals_for(loop, sy)
                XY = X[:, None] ^ Y[None, :] ^ int(D[sx][sy])
                for sz in range(m):
                    Z = _centrals_for(loop, sz)
                    lhs = _comm_grid3(loop, XY, sx ^ sy, Z, sz)
                    rhs = C2[sx][sz] ^ C2[sy][sz] ^ A3[sx][sy][sz]
                    if not np.all(lhs == rhs):
                        ok = False
                        ix, iy, iz = map(int, np.argwhere(lhs != rhs)[0])
                        wit = {"x": int(X[ix]), "y": int(Y[iy]), "z": int(Z[iz])}
                        break
                if not ok:
                    break
            if not ok:
                break
        checks.append(Check("commutator-expansion", ok, f"all {loop.size}^3 triples", wit))

        # associator law: values are support-determined (verified), so the
        # 4-variable law reduces to the support tables
        A3 = loop.assoc_table
        ok = True
        wit = None
        for sw in range(m):
            for sx in range(m):
                for sy in range(m):
                    for sz in range(m):
                        if A3[sw ^ sx][sy][sz] != A3[sw][sy][sz] ^ A3[sx][sy][sz]:
                            ok = False
                            wit = {"sw": sw, "sx": sx, "sy": sy, "sz": sz}
                            break
        checks.append(
            Check(
                "associator-expansion",
                ok,
                f"all {m}^4 support tuples x support-determination of values",
                wit,
            )
        )
    else:
        x, y, z, w = (rng.integers(0, loop.size, size=samples, dtype=np.uint64).astype(loop._dtype()) for _ in range(4))
        sq = lambda a: loop.nmul(a, a)
        ok1 = np.array_equal(sq(loop.nmul(x, y)), sq(x) ^ sq(y) ^ loop.ncomm(x, y))
        checks.append(Check("square-expansion", bool(ok1), f"{samples} sampled pairs"))
        lhs = loop.ncomm(loop.nmul(x, y), z)
        rhs = loop.ncomm(x, z) ^ loop.ncomm(y, z) ^ loop.nassoc(x, y, z)
        checks.append(Check("commutator-expansion", bool(np.array_equal(lhs, rhs)), f"{samples} sampled triples"))
        lhs = loop.nassoc(loop.nmul(w, x), y, z)
        rhs = loop.nassoc(w, y, z) ^ loop.nassoc(x, y, z)
        checks.append(Check("associator-expansion", bool(np.array_equal(lhs, rhs)), f"{samples} sampled 4-tuples"))
    return checks


def _comm_grid(loop: FreeLoop, X, sx, Y, sy):
    D = loop._delta
    t = (X ^ int(D[sx][sx]))[:, None] ^ (Y ^ int(D[sy][sy]))[None, :] ^ int(D[sx][sy])
    t = t ^ X[:, None] ^ int(D[sx ^ sy][sx])
    t = t ^ Y[None, :] ^ int(D[sy][sy])
    return t


def _comm_grid3(loop: FreeLoop, XY, sxy, Z, sz):
    """Commutator of an (x,y)-grid with a z-vector, axes (ix, iy, iz)."""
    D = loop._delta
    a_inv = XY ^ int(D[sxy][sxy])
    z_inv = Z ^ int(D[sz][sz])
    t = a_inv[:, :, None] ^ z_inv[None, None, :] ^ int(D[sxy][sz])
    t = t ^ XY[:, :, None] ^ int(D[sxy ^ sz][sxy])
    t = t ^ Z[None, None, :] ^ int(D[sz][sz])
    return t


def _suite_exhaustive(loop: FreeLoop) -> SuiteReport:
    checks: List[Check] = []
    every = f"all {loop.size} elements"

    # x^4 = 1
    bad = next((x for x in loop.elements() if loop.power(x, 4) != 0), None)
    checks.append(Check("fourth-power", bad is None, every, None if bad is None else {"x": bad}))

    # squares are support-determined and central (x^2 = x*x directly)
    bad = next(
        (x for x in loop.elements() if loop.mul(x, x) != loop.square(x) or loop.support(loop.mul(x, x))),
        None,
    )
    checks.append(Check("square-central", bad is None, every, None if bad is None else {"x": bad}))

    ok, wit = _sweep_commutators(loop)
    checks.append(Check("commutator-central-support-determined", ok, f"all {loop.size}^2 pairs", wit))
    # [x,y]^2 = 1: commutator values are central, and central elements square
    # to identity (their support product picks up no correction)
    comm_sq_ok = ok and all(
        loop.mul(v, v) == 0 for row in loop.comm_table for v in row
    )
    checks.append(Check("commutator-squared", comm_sq_ok, "all commutator values"))

    ok, wit = _sweep_associators(loop)
    checks.append(Check("associator-central-support-determined", ok, f"all {loop.size}^3 triples", wit))
    assoc_sq_ok = ok and all(
        loop.mul(v, v) == 0 for plane in loop.assoc_table for row in plane for v in row
    )
    checks.append(Check("associator-squared", assoc_sq_ok, "all associator values"))

    ok, wit = _sweep_central_annihilation(loop)
    checks.append(
        Check(
            "central-annihilation",
            ok,
            f"all {1 << loop.central_bits} central elements x all elements (comm + 3 assoc slots)",
            wit,
        )
    )

    ok, wit, count = _sweep_moufang(loop)
    checks.append(Check("moufang", ok, f"all {loop.size}^3 = {count} triples", wit))

    checks.extend(lemma_identities(loop.n) if loop.n >= 2 else lemma_identities(loop.n))
    checks.extend(_expansion_law_checks(loop, exhaustive=True))

    return SuiteReport(
        n=loop.n,
        mode="exhaustive",
        seed=None,
        samples=None,
        moufang_tuples=count,
        checks=checks,
    )


def _suite_sampled(loop: FreeLoop, seed: int, samples: int) -> SuiteReport:
    rng = np.random.default_rng(seed)
    dt = loop._dtype()
    checks: List[Check] = []
    small = max(1, min(samples, 1_000_000))

    def draw(k, count):
        return [rng.integers(0, loop.size, size=count, dtype=np.uint64).astype(dt) for _ in range(k)]

    # Moufang, chunked
    remaining = samples
    ok = True
    wit = None
    chunk = 1_000_000
    while remaining > 0 and ok:
        k = min(chunk, remaining)
        x, y, z = draw(3, k)
        lhs = loop.nmul(loop.nmul(x, y), loop.nmul(z, x))
        rhs = loop.nmul(loop.nmul(x, loop.nmul(y, z)), x)
        if not np.array_equal(lhs, rhs):
            i = int(np.argwhere(lhs != rhs)[0][0])
            ok, wit = False, {"x": int(x[i]), "y": int(y[i]), "z": int(z[i])}
        remaining -= k
    checks.append(Check("moufang", ok, f"{samples} sampled triples, seed {seed}", wit))

    x, y, z, t, s = draw(5, small)
    idn = np.zeros(small, dtype=dt)
    sq = lambda a: loop.nmul(a, a)
    pow4 = sq(sq(x))
    checks.append(Check("fourth-power", bool(np.array_equal(pow4, idn)), f"{small} samples"))
    comm = loop.ncomm(x, y)
    checks.append(Check("commutator-squared", bool(np.array_equal(sq(comm), idn)), f"{small} samples"))
    assoc = loop.nassoc(x, y, z)
    checks.append(Check("associator-squared", bool(np.array_equal(sq(assoc), idn)), f"{small} samples"))
    checks.append(
        Check("square-commutes", bool(np.array_equal(loop.ncomm(sq(x), y), idn)), f"{small} samples")
    )
    checks.append(
        Check("commutator-commutes", bool(np.array_equal(loop.ncomm(comm, t), idn)), f"{small} samples")
    )
    checks.append(
        Check("associator-commutes", bool(np.array_equal(loop.ncomm(assoc, t), idn)), f"{small} samples")
    )
    checks.append(
        Check("square-associates", bool(np.array_equal(loop.nassoc(sq(x), y, z), idn)), f"{small} samples")
    )
    checks.append(
        Check("commutator-associates", bool(np.array_equal(loop.nassoc(comm, z, t), idn)), f"{small} samples")
    )
    checks.append(
        Check("associator-associates", bool(np.array_equal(loop.nassoc(assoc, t, s), idn)), f"{small} samples")
    )

    checks.extend(lemma_identities(loop.n))
    checks.extend(_expansion_law_checks(loop, exhaustive=False, rng=rng, samples=small))

    return SuiteReport(
        n=loop.n,
        mode="sampled",
        seed=seed,
        samples=samples,
        moufang_tuples=samples,
        checks=checks,
    )
