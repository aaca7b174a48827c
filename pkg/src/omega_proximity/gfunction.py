"""Strongly multiplicative step functions from census maximizers.

Responsibility: pick, for each member prime of a sparse set, the value a
strongly multiplicative g should take there so that g(n) hits the busiest
factor-count level of the integers coprime to the set, and evaluate the
resulting g.  g(p) = 1 off the set, so g(n) depends only on which members
divide n, never on their exponents.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .budget import DEFAULT_SEGMENT_SIZE
from .census import census, mode_k, normalize_f
from .errors import ScaleError
from .primeset import PrimeSetS


@dataclass(frozen=True)
class MaximizerRecord:
    """Argmax of a restricted census used to value one member prime.

    level is the factor-count level with the largest count among integers
    r <= x // prime coprime to the whole set; ties resolve to the smaller
    level.
    """

    index: int  # 1-based position in the set
    prime: int
    x: int
    level: int
    count: int


@dataclass(frozen=True)
class GEntry:
    """Provenance for one member prime of a built g."""

    prime: int
    value: int
    z: int | None
    residue_class: int | None
    fallback: bool


@dataclass(frozen=True)
class GFunction:
    """Strongly multiplicative g given by a finite prime -> value table.

    g(n) is the product of table values over the table primes dividing n;
    primes outside the table contribute 1, so the empty table is g == 1.
    """

    x: int | None
    prime_set: PrimeSetS | None
    f_tag: str
    entries: tuple[GEntry, ...]

    @property
    def table(self) -> dict[int, int]:
        return {e.prime: e.value for e in self.entries}

    def value(self, n: int) -> int:
        """g(n) by divisibility tests against the table primes only."""
        if n < 1:
            raise ValueError(f"g is defined on positive integers, got {n}")
        out = 1
        for e in self.entries:
            if n % e.prime == 0:
                out *= e.value
        return out

    @classmethod
    def identity(cls) -> "GFunction":
        return cls(None, None, "big_omega", ())

    def to_json_dict(self) -> dict:
        return {
            "x": self.x,
            "f": self.f_tag,
            "set": self.prime_set.to_json_dict() if self.prime_set else None,
            "table": [
                {
                    "prime": e.prime,
                    "value": e.value,
                    "z": e.z,
                    "class": e.residue_class,
                    "fallback": e.fallback,
                }
                for e in self.entries
            ],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "GFunction":
        pset = PrimeSetS.from_json_dict(d["set"]) if d.get("set") else None
        entries = tuple(
            GEntry(
                prime=int(row["prime"]),
                value=int(row["value"]),
                z=None if row.get("z") is None else int(row["z"]),
                residue_class=None if row.get("class") is None else int(row["class"]),
                fallback=bool(row.get("fallback", False)),
            )
            for row in d["table"]
        )
        return cls(d.get("x"), pset, normalize_f(d.get("f", "big_omega")), entries)


def g_to_json_text(g: GFunction) -> str:
    return json.dumps(g.to_json_dict(), indent=2) + "\n"


def compute_maximizer(
    x: int,
    prime_set: PrimeSetS,
    index: int,
    f_tag: str = "big_omega",
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    threads: int = 1,
) -> MaximizerRecord:
    """Busiest f-level among r <= x // member coprime to the whole set.

    index is 1-based.  Requires member <= x/2 so the restricted range
    holds more than r = 1; smaller x raises ScaleError.
    """
    tag = normalize_f(f_tag)
    if not 1 <= index <= len(prime_set.members):
        raise ValueError(f"index must be in 1..{len(prime_set.members)}, got {index}")
    prime = prime_set.members[index - 1]
    if 2 * prime > x:
        raise ScaleError(f"member {prime} needs x >= {2 * prime}, got x = {x}")
    table = census(x // prime, tag, restrict=prime_set, segment_size=segment_size, threads=threads)
    level, count = mode_k(table)
    return MaximizerRecord(index, prime, x, level, count)


def build_g(
    x: int,
    prime_set: PrimeSetS,
    f_tag: str = "big_omega",
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    threads: int = 1,
) -> GFunction:
    """Value every member of the set from its restricted-census maximizer.

    With f = big_omega the bookkeeping level z splits by residue class:
    members 1 mod 4 take z = level + 2 and value z - 1, members 3 mod 4
    take z = level and value z + 1; both land on level + 1.  The member 2
    carries no class and keeps value 1.  With f = omega every member,
    including 2, takes value z = level + 1.

    Members above x/2 have no usable restricted range; they fall back to
    value 1 with fallback=True, and still contribute their own prime as a
    coincidence witness.  Rebuilding at the same (x, set, f) reproduces
    the same table byte for byte.
    """
    if x < 1:
        raise ValueError(f"build_g requires x >= 1, got {x}")
    tag = normalize_f(f_tag)
    entries: list[GEntry] = []
    for index, (prime, residue) in enumerate(zip(prime_set.members, prime_set.classes), 1):
        if tag == "big_omega" and prime == 2:
            # No residue class mod 4; keep g(2) neutral.
            entries.append(GEntry(prime, 1, None, None, True))
            continue
        if 2 * prime > x:
            entries.append(GEntry(prime, 1, None, residue, True))
            continue
        rec = compute_maximizer(x, prime_set, index, tag, segment_size, threads)
        if tag == "omega":
            z = rec.level + 1
            value = z
        elif residue == 1:
            z = rec.level + 2
            value = z - 1
        else:
            z = rec.level
            value = z + 1
        entries.append(GEntry(prime, value, z, residue, False))
    return GFunction(x, prime_set, tag, tuple(entries))
