"""Classification pipelines, the code database format and covering radius."""

from __future__ import annotations

import logging
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import islice
from math import comb
from pathlib import Path
from typing import Callable, Iterator

import numpy as np

from . import _kernels
from .construct import (
    _build_up_matrix,
    odd_coset_representatives,
    recursive_extensions,
)
from .equiv import canonical_form
from .gf2core import BudgetExceeded, GenMatrix, ParseError, direct_sum, word_to_str
from .selfdual import (
    MassAudit,
    SelfDualCode,
    mass_audit,
    s_extremal_check,
    validate_self_dual,
)

log = logging.getLogger(__name__)

CLASSIFY_MAX_N = 20
BUILDUP_CHUNK = 32  # coset representatives per job; fixed so results ignore the worker count
COVERING_MAX_HALF = 24

E2 = GenMatrix((0b11,), 2)


class MassDeficit(RuntimeError):
    def __init__(self, db: "CodeDB", audit: MassAudit):
        super().__init__(f"mass audit at n={db.n} short by {audit.deficit}")
        self.db = db
        self.audit = audit


class IncompleteSeeds(ValueError):
    pass


# ------------------------------------------------------------------ database

@dataclass(frozen=True, eq=False)
class CodeEntry:
    code: SelfDualCode
    aut_order: int
    prov: str = "-"

    @property
    def n(self) -> int:
        return self.code.n

    @property
    def d(self) -> int:
        return self.code.d

    @property
    def s(self) -> int | None:
        return self.code.s

    @property
    def type_tag(self) -> str:
        return self.code.type_tag

    @property
    def key(self) -> tuple[int, ...]:
        return self.code.gen.rows


def _sort_key(e: CodeEntry):
    return (e.d, e.key)


@dataclass
class CodeDB:
    n: int
    type_: str = "both"
    complete: bool = False
    entries: list[CodeEntry] = field(default_factory=list)

    def __post_init__(self):
        self.entries = sorted(self.entries, key=_sort_key)
        keys = [e.key for e in self.entries]
        if len(set(keys)) != len(keys):
            raise ValueError("duplicate canonical forms in database")

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def counts_by_d(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for e in self.entries:
            out[e.d] = out.get(e.d, 0) + 1
        return dict(sorted(out.items()))

    def optimal(self, type_: str | None = None) -> tuple[int, int]:
        """(highest minimum weight, number of classes reaching it).

        Both types are pooled unless ``type_`` picks one.
        """
        pool = [e for e in self.entries if type_ is None or e.type_tag == type_]
        if not pool:
            raise ValueError("no entries of the requested type")
        best = max(e.d for e in pool)
        return best, sum(1 for e in pool if e.d == best)

    def select(self, pred: Callable[[CodeEntry], bool], complete: bool = False, type_: str | None = None) -> "CodeDB":
        return CodeDB(self.n, type_ or self.type_, complete, [e for e in self.entries if pred(e)])

    def to_text(self) -> str:
        lines = [f"SDDB n={self.n} type={self.type_} complete={int(self.complete)} count={len(self.entries)}"]
        for e in self.entries:
            s = "-" if e.s is None else str(e.s)
            lines.append(f"code d={e.d} s={s} aut={e.aut_order} prov={e.prov}")
            lines.extend(word_to_str(r, self.n) for r in e.code.gen.rows)
        return "\n".join(lines) + "\n"

    def save(self, path) -> None:
        Path(path).write_text(self.to_text(), encoding="utf-8")

    @classmethod
    def from_text(cls, text: str, verify_aut: bool = False) -> "CodeDB":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("SDDB "):
            raise ParseError("missing SDDB header")
        head = _fields(lines[0][5:])
        n, count = int(head["n"]), int(head["count"])
        half = n // 2
        entries = []
        pos = 1
        for _ in range(count):
            if pos >= len(lines) or not lines[pos].startswith("code "):
                raise ParseError(f"expected 'code' line at record {len(entries)}")
            meta = _fields(lines[pos][5:])
            gen = GenMatrix.from_strings(lines[pos + 1: pos + 1 + half])
            if gen.n != n or gen.k != half:
                raise ParseError("record matrix has the wrong shape")
            code = validate_self_dual(gen)
            if code.d != int(meta["d"]):
                raise ParseError(f"recorded d={meta['d']} but the code has d={code.d}")
            aut = int(meta["aut"])
            if verify_aut and canonical_form(gen).aut_order != aut:
                raise ParseError("recorded automorphism order does not match")
            entries.append(CodeEntry(code, aut, meta.get("prov", "-")))
            pos += 1 + half
        if pos != len(lines):
            raise ParseError("trailing content after the last record")
        return cls(n, head.get("type", "both"), head.get("complete") == "1", entries)

    @classmethod
    def load(cls, path, verify_aut: bool = False) -> "CodeDB":
        return cls.from_text(Path(path).read_text(encoding="utf-8"), verify_aut)


def _fields(s: str) -> dict[str, str]:
    out = {}
    for tok in s.split():
        if "=" not in tok:
            raise ParseError(f"bad field {tok!r}")
        k, v = tok.split("=", 1)
        out[k] = v
    return out


def make_entry(gen: GenMatrix, prov: str = "-") -> tuple[tuple[int, ...], CodeEntry]:
    cert = canonical_form(gen)
    return cert.key, CodeEntry(validate_self_dual(cert.canon), cert.aut_order, prov)


# ------------------------------------------------------------ classify_all

def _buildup_worker(args) -> list[tuple[tuple[int, ...], CodeEntry]]:
    """Canonical d > 2 codes built up from one seed over a run of x, first x wins."""
    seed_idx, rows, n, xs = args
    found: dict[tuple[int, ...], CodeEntry] = {}
    for x in xs:
        m = _build_up_matrix(rows, n, x)
        if _kernels.min_weight(_kernels.as_words(m.rows), 0, 2) <= 2:
            continue
        key, entry = make_entry(m, f"bu:{seed_idx}:{x:x}")
        found.setdefault(key, entry)
    return list(found.items())


def _pool_map(fn, jobs: list, workers: int):
    if workers <= 1 or len(jobs) <= 1:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, jobs))


def _ordered_results(fn, jobs: list, workers: int) -> Iterator:
    """Results of fn over jobs, yielded in job order.

    At most 2 * workers jobs are in flight, so a consumer that stops early
    wastes little work.
    """
    if workers <= 1 or len(jobs) <= 1:
        for j in jobs:
            yield fn(j)
        return
    pool = ProcessPoolExecutor(max_workers=workers)
    try:
        todo = iter(jobs)
        pending = deque(pool.submit(fn, j) for j in islice(todo, 2 * workers))
        while pending:
            result = pending.popleft().result()
            for j in islice(todo, 1):
                pending.append(pool.submit(fn, j))
            yield result
    finally:
        pool.shutdown(wait=True, cancel_futures=True)


def classify_all(
    n: int,
    workers: int = 1,
    seed_db: CodeDB | None = None,
    strict: bool = True,
    unsafe_budget: bool = False,
) -> CodeDB:
    """Every self-dual code of length n up to equivalence.

    d = 2 classes are e2 + D for D of length n-2; d > 2 classes come from
    building up every length n-2 class with every odd coset representative.
    Stops once the mass formula balances, which also certifies the result.
    """
    if n % 2 or n < 2:
        raise ValueError("n must be even and >= 2")
    if n > CLASSIFY_MAX_N and not unsafe_budget:
        raise BudgetExceeded(f"full classification beyond n={CLASSIFY_MAX_N} needs unsafe_budget")
    if n == 2:
        key, entry = make_entry(E2, "e2")
        return CodeDB(2, "both", mass_audit(CodeDB(2, entries=[entry]), 2).complete, [entry])
    prev = seed_db if seed_db is not None else classify_all(n - 2, workers, strict=strict, unsafe_budget=unsafe_budget)
    if prev.n != n - 2 or not prev.complete:
        raise IncompleteSeeds(f"need a complete length-{n - 2} database")
    found: dict[tuple[int, ...], CodeEntry] = {}
    for idx, e in enumerate(prev.entries):
        key, entry = make_entry(direct_sum(E2, e.code.gen), f"sum:{idx}")
        found.setdefault(key, entry)

    def audit() -> MassAudit:
        return mass_audit(CodeDB(n, entries=list(found.values())), n)

    # Seeds are merged in order and the audit is checked after each one, so
    # the result does not depend on the worker count.
    jobs = []
    for idx, e in enumerate(prev.entries):
        reps = odd_coset_representatives(e.code)
        for i in range(0, len(reps), BUILDUP_CHUNK):
            jobs.append((idx, e.code.gen.rows, n - 2, tuple(reps[i: i + BUILDUP_CHUNK])))
    if not audit().complete:
        for result in _ordered_results(_buildup_worker, jobs, workers):
            for key, entry in result:
                found.setdefault(key, entry)
            if audit().complete:
                break
    a = audit()
    log.info("n=%d classes=%d mass %s/%s", n, len(found), a.found, a.expected)
    db = CodeDB(n, "both", a.complete, list(found.values()))
    if not a.complete and strict:
        raise MassDeficit(db, a)
    return db


def classify_chain(n: int, workers: int = 1) -> dict[int, CodeDB]:
    """Complete databases for every even length 2..n."""
    out: dict[int, CodeDB] = {}
    for m in range(2, n + 1, 2):
        out[m] = classify_all(m, workers, seed_db=out.get(m - 2))
    return out


# ------------------------------------------------------- extremal extension

def _extend_worker(args) -> list[tuple[tuple[int, ...], CodeEntry]]:
    seeds, n = args
    found: dict[tuple[int, ...], CodeEntry] = {}
    for seed_idx, rows in seeds:
        seed = validate_self_dual(GenMatrix(rows, n))
        for ext in recursive_extensions(seed):
            cert = canonical_form(ext.code.gen)
            if cert.key not in found:
                found[cert.key] = CodeEntry(validate_self_dual(cert.canon), cert.aut_order, f"rec:{seed_idx}:{ext.a:x}")
    return sorted(found.items())


def classify_extremal_step(
    seeds: CodeDB,
    partition_size: int = 1000,
    workers: int = 1,
    d: int | None = None,
    allow_incomplete: bool = False,
    seed_filter: Callable[[CodeEntry], bool] | None = None,
) -> CodeDB:
    """All [n+2, n/2+1, d+2] codes from a complete set of [n, n/2, >= d] seeds.

    Seeds are split into partitions, each extended and deduplicated on its
    own, then merged in partition order.  The output is independent of
    ``partition_size`` and ``workers``.
    """
    if not seeds.complete and not allow_incomplete:
        raise IncompleteSeeds("seed database is not flagged complete")
    if not seeds.entries:
        return CodeDB(seeds.n + 2, "both", seeds.complete, [])
    if d is None:
        d = min(e.d for e in seeds.entries)
    chosen = [
        (i, e.code.gen.rows)
        for i, e in enumerate(seeds.entries)
        if e.d == d and (seed_filter is None or seed_filter(e))
    ]
    parts = [chosen[i: i + partition_size] for i in range(0, len(chosen), max(1, partition_size))]
    results = _pool_map(_extend_worker, [(p, seeds.n) for p in parts], workers)
    merged: dict[tuple[int, ...], CodeEntry] = {}
    for part in results:
        for key, entry in part:
            merged.setdefault(key, entry)
    return CodeDB(seeds.n + 2, "both", seeds.complete, list(merged.values()))


# ------------------------------------------------------------- s-extremal

def s_extremal_shadow(n: int, d: int) -> int:
    """Shadow minimum weight an s-extremal code of length n and distance d must have."""
    if n % 24 == 22 and d == 4 * (n // 24) + 6:
        return 8 + n // 2 - 2 * d
    return 4 + n // 2 - 2 * d


def filter_s_extremal(db: CodeDB) -> CodeDB:
    return db.select(lambda e: e.type_tag == "I" and s_extremal_check(e.code), complete=db.complete)


def shadow_subtraction_applies(n: int, d: int) -> bool:
    """Whether every s-extremal [n, n/2, d] code subtracts to shadow weight s-1."""
    s = s_extremal_shadow(n, d)
    return n % 4 == 2 and d > 2 and (d - 2) % 4 == 0 and s >= 3


def search_s_extremal_via_shadow(
    seed_db: CodeDB,
    n: int,
    d: int,
    workers: int = 1,
    allow_incomplete: bool = False,
) -> CodeDB:
    """s-extremal [n, n/2, d] codes grown only from seeds with shadow weight s-1."""
    if seed_db.n != n - 2:
        raise ValueError(f"seed database has length {seed_db.n}, need {n - 2}")
    s = s_extremal_shadow(n, d)
    sound = shadow_subtraction_applies(n, d) and seed_db.complete
    if not sound and not allow_incomplete:
        raise IncompleteSeeds("seeds incomplete or the shadow subtraction hypotheses fail")
    def wanted(e: CodeEntry) -> bool:
        return e.type_tag == "I" and e.s == s - 1

    log.info("s-extremal search n=%d d=%d s=%d", n, d, s)
    ext = classify_extremal_step(seed_db, workers=workers, d=d - 2, allow_incomplete=True, seed_filter=wanted)
    out = ext.select(lambda e: e.d == d and e.type_tag == "I" and s_extremal_check(e.code), complete=sound)
    return out


# ---------------------------------------------------------- covering radius

@dataclass(frozen=True)
class CoveringRadiusResult:
    rho: int
    leader_weight_histogram: tuple[int, ...]


def covering_radius(c: SelfDualCode) -> CoveringRadiusResult:
    """Exact covering radius from the coset-leader table.

    A self-dual code is its own parity-check code, so the syndrome of a
    vector v is (v . r_i)_i over the generator rows.
    """
    m = c.k
    if m > COVERING_MAX_HALF:
        raise BudgetExceeded(f"syndrome table of 2^{m} entries exceeds the budget")
    rows = c.gen.rows
    cols = []
    for j in range(c.n):
        col = 0
        for i, r in enumerate(rows):
            if (r >> j) & 1:
                col |= 1 << i
        cols.append(col)
    dist = _kernels.coset_leader_weights(_kernels.as_words(cols), m)
    hist = np.bincount(dist.astype(np.int64))
    rho = len(hist) - 1
    return CoveringRadiusResult(rho, tuple(int(v) for v in hist))


def sphere_covering_lower(n: int) -> int:
    """Least R meeting both parity-split sphere-covering inequalities."""
    half = Fraction(2) ** (n // 2 - 1)
    target = 2 ** (n // 2)
    r = 0
    while True:
        total = sum(comb(n, i) for i in range(r + 1))
        even = sum(comb(n, i) for i in range(0, r + 1, 2))
        odd = sum(comb(n, i) for i in range(1, r + 1, 2))
        if total >= target and even >= half and odd >= half:
            return r
        r += 1


def delsarte_upper(c: SelfDualCode) -> int:
    return sum(1 for w, a in enumerate(c.wenum.coeffs) if w and a)


def covering_radius_bounds(c: SelfDualCode, parent_rho: int | None = None) -> tuple[int, int]:
    """(sphere-covering lower bound, Delsarte upper bound); the upper bound
    drops to parent_rho + 2 when c was built up from a parent of radius
    ``parent_rho``."""
    upper = delsarte_upper(c)
    if parent_rho is not None:
        upper = min(upper, parent_rho + 2)
    return sphere_covering_lower(c.n), upper


def parent_index(prov: str) -> int | None:
    """Parent position for building-up provenance ('bu:' or 'rec:'), else None."""
    kind, _, rest = prov.partition(":")
    if kind in ("bu", "rec") and rest:
        return int(rest.split(":")[0])
    return None


def bounds_from_db(entry: CodeEntry, parent_db: CodeDB | None) -> tuple[int, int]:
    parent_rho = None
    idx = parent_index(entry.prov)
    if parent_db is not None and idx is not None:
        parent_rho = covering_radius(parent_db.entries[idx].code).rho
    return covering_radius_bounds(entry.code, parent_rho)
