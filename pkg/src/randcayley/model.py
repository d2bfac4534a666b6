"""Group arithmetic, primality, and seeded sampling of generator sets."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

#: Largest admissible modulus.  Distances are stored as uint32 with a sentinel,
#: so everything below 2**31 fits comfortably.
Q_CAP = 2**31

# Sinclair's base set; deterministic for every n < 2**64.
_MR_BASES = (2, 325, 9375, 28178, 450775, 9780504, 1795265022)
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class CapacityError(ValueError):
    """Raised when a modulus or a work estimate exceeds a configured limit."""


class Mode(enum.Enum):
    DIRECTED = "directed"
    SYMMETRIC = "symmetric"

    @classmethod
    def parse(cls, value: "str | Mode") -> "Mode":
        if isinstance(value, Mode):
            return value
        try:
            return cls(value.strip().lower())
        except ValueError:
            raise ValueError(f"unknown mode {value!r}; expected 'directed' or 'symmetric'") from None


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for all n < 2**64.

    Larger inputs are still answered, but only probabilistically.
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        a %= n
        if a == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    """Smallest prime >= n, for 2 <= n < 2**31."""
    if not 2 <= n < Q_CAP:
        raise ValueError(f"next_prime expects 2 <= n < 2**31, got {n}")
    p = n
    while not is_prime(p):
        p += 1
    if p >= Q_CAP:
        raise CapacityError(f"next prime after {n} exceeds the 2**31 cap")
    return p


@dataclass(frozen=True)
class GroupSpec:
    """The cyclic group Z_q."""

    q: int
    is_prime: bool = field(init=False)

    def __post_init__(self):
        if not isinstance(self.q, (int, np.integer)) or self.q < 2:
            raise ValueError(f"modulus must be an integer >= 2, got {self.q!r}")
        if self.q > Q_CAP:
            raise CapacityError(f"modulus {self.q} exceeds the 2**31 cap")
        object.__setattr__(self, "q", int(self.q))
        object.__setattr__(self, "is_prime", is_prime(self.q))

    def reduce(self, x: int) -> int:
        return x % self.q

    def add(self, x: int, y: int) -> int:
        return (x + y) % self.q

    def mul(self, x: int, y: int) -> int:
        # Python ints never overflow, so this is the widened product.
        return (x * y) % self.q

    def neg(self, x: int) -> int:
        return (-x) % self.q

    def require_prime(self, what: str = "this computation") -> None:
        if not self.is_prime:
            raise ValueError(f"{what} requires a prime modulus, got q={self.q}")


@dataclass(frozen=True)
class GeneratorSet:
    """k residues together with the directed/symmetric interpretation."""

    gens: tuple[int, ...]
    mode: Mode = Mode.DIRECTED

    def __post_init__(self):
        object.__setattr__(self, "gens", tuple(int(g) for g in self.gens))
        object.__setattr__(self, "mode", Mode.parse(self.mode))
        if not self.gens:
            raise ValueError("a generator set needs at least one generator")

    @property
    def k(self) -> int:
        return len(self.gens)

    def validate(self, group: GroupSpec) -> None:
        bad = [g for g in self.gens if not 0 <= g < group.q]
        if bad:
            raise ValueError(f"generators {bad} are not residues mod {group.q}")

    def steps(self, q: int) -> list[int]:
        """Distinct nonzero step residues actually used by the graph."""
        out = []
        for g in self.gens:
            cands = [g % q] if self.mode is Mode.DIRECTED else [g % q, (-g) % q]
            for s in cands:
                if s != 0 and s not in out:
                    out.append(s)
        return out

    def __str__(self):
        return f"{self.mode.value}:" + "+".join(map(str, self.gens))


@dataclass(frozen=True)
class RandomSource:
    """Reproducible per-trial stream keyed by (master_seed, stream_id).

    The two ids feed a numpy ``SeedSequence`` as entropy and spawn key, which
    is how numpy derives independent child streams.
    """

    master_seed: int
    stream_id: int = 0

    def __post_init__(self):
        for name in ("master_seed", "stream_id"):
            v = getattr(self, name)
            if not 0 <= v < 2**64:
                raise ValueError(f"{name} must be a 64-bit unsigned integer, got {v}")

    def seed_sequence(self) -> np.random.SeedSequence:
        return np.random.SeedSequence(self.master_seed, spawn_key=(self.stream_id,))

    def generator(self) -> np.random.Generator:
        return np.random.Generator(np.random.PCG64(self.seed_sequence()))

    @property
    def stream_seed(self) -> int:
        """A 64-bit digest of the stream, recorded alongside trial outputs."""
        return int(self.seed_sequence().generate_state(1, np.uint64)[0])


def sample_generators(group: GroupSpec, k: int, mode="directed", rng: RandomSource | None = None,
                      *, nonzero: bool = False, distinct: bool = False) -> GeneratorSet:
    """Draw k i.i.d. uniform residues of Z_q.

    ``Generator.integers`` uses Lemire's rejection method, so there is no
    modulo bias.  ``nonzero`` and ``distinct`` switch to rejection sampling
    of the conditioned model; they are off by default and are never used by
    the theorem suites.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if rng is None:
        rng = RandomSource(0)
    if distinct and k > group.q - (1 if nonzero else 0):
        raise ValueError(f"cannot draw {k} distinct residues from Z_{group.q}")
    gen = rng.generator()
    if not (nonzero or distinct):
        gens = gen.integers(0, group.q, size=k, dtype=np.int64)
        return GeneratorSet(tuple(int(g) for g in gens), Mode.parse(mode))
    out: list[int] = []
    while len(out) < k:
        g = int(gen.integers(0, group.q))
        if nonzero and g == 0:
            continue
        if distinct and g in out:
            continue
        out.append(g)
    return GeneratorSet(tuple(out), Mode.parse(mode))
