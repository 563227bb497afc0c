"""End-to-end classification: enumerate, filter, dedupe, flag, certify.

For each skeleton of the requested complexity the gluing space is scanned
(optionally sharded into fixed prefix ranges and farmed out to worker
processes), acyclic survivors are collected as configuration tuples, and the
reducer quotients them by the move group: walking the survivor set in order,
each unseen configuration's orbit is marked and contributes one class whose
representative is the orbit-minimal configuration.  Orbits never cross the
survivor set's boundary, so the classes, their representatives and all
derived data are independent of the shard plan and job count; output files
are byte-identical across runs.

Results persist per complexity as a JSON-lines surface file plus a manifest
with options and content hashes; skeletons already present in a matching
manifest are skipped on resume.
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from collections import Counter
from dataclasses import dataclass, field
from multiprocessing import Pool

from . import algebra, canon, topology
from .formats import SurfaceRecord, read_records
from .skeleta import Skeleton, enumerate_skeleta, skeleton_by_index, skeleton_stats
from .surfaces import Surface, enumerate_surfaces, trace_gluing, validate_words

OUT_DIR_ENV = "FAKESURFACES_OUT"


def default_out_dir() -> str:
    return os.environ.get(OUT_DIR_ENV, "fakesurfaces-out")


@dataclass
class ClassificationResult:
    complexity: int
    min_disk_len: int
    records: list[SurfaceRecord] = field(default_factory=list)

    @property
    def total(self) -> int:
        return len(self.records)

    def per_skeleton(self) -> dict[int, int]:
        counts: Counter = Counter(r.skeleton_index for r in self.records)
        return dict(sorted(counts.items()))

    @property
    def spines(self) -> int:
        return sum(1 for r in self.records if r.spine)

    def t_histogram(self) -> dict[int, int]:
        """Surface counts by number of disks with nontrivial triod bundle."""
        hist: Counter = Counter(
            sum(1 for fl in r.flags if not fl[1]) for r in self.records
        )
        return dict(sorted(hist.items()))

    def pi1_summary(self) -> dict[str, int]:
        return dict(sorted(Counter(r.pi1 for r in self.records).items()))


def _scan_shard(args) -> list[tuple[int, ...]]:
    """Worker: survivors (acyclic, t+1 curves, length filter) of one prefix
    range of one skeleton's gluing space."""
    complexity, index, min_disk_len, prefix = args
    s = skeleton_by_index(complexity, index)
    out = []
    for cfg, words in enumerate_surfaces(s, min_disk_len=min_disk_len, prefix=prefix):
        m = algebra.boundary_matrix(Surface(s, words))
        if abs(algebra.det_bareiss(m)) == 1:
            out.append(cfg)
    return out


def shard_prefixes(s: Skeleton, shards: int) -> list[tuple[int, ...]]:
    """Split the gluing space into at least `shards` fixed prefix ranges."""
    depth = 0
    while 6**depth < shards and depth < s.n_edges:
        depth += 1
    prefixes: list[tuple[int, ...]] = [()]
    for _ in range(depth):
        prefixes = [p + (k,) for p in prefixes for k in range(6)]
    return prefixes


def classify_skeleton(
    s: Skeleton,
    min_disk_len: int = 1,
    jobs: int = 1,
    shards: int | None = None,
    coset_cap: int = algebra.DEFAULT_COSET_CAP,
    pool: Pool | None = None,
) -> list[SurfaceRecord]:
    """Classify all acyclic surfaces over one skeleton; deterministic."""
    if shards is None:
        shards = 1 if jobs == 1 else 6 * jobs
    prefixes = shard_prefixes(s, shards)
    tasks = [(s.complexity, s.index, min_disk_len, p) for p in prefixes]
    if jobs > 1 and len(tasks) > 1:
        if pool is not None:
            shard_outputs = pool.map(_scan_shard, tasks)
        else:
            with Pool(jobs) as local_pool:
                shard_outputs = local_pool.map(_scan_shard, tasks)
    else:
        shard_outputs = [_scan_shard(t) for t in tasks]
    survivors = sorted(set().union(*map(set, shard_outputs))) if shard_outputs else []
    return reduce_survivors(s, survivors, coset_cap)


def reduce_survivors(
    s: Skeleton, survivors, coset_cap: int = algebra.DEFAULT_COSET_CAP
) -> list[SurfaceRecord]:
    """Quotient survivor configurations by the move group and derive flags
    and certificates for one representative per class.

    Two stages: the fast geometric quotient (germ-symmetry orbits of
    configurations), then the published sign-flip quotient merging the few
    geometric classes that differ only by non-loop reorientations.
    """
    survivor_set = set(survivors)
    seen: set = set()
    geo_reps = []
    for cfg in sorted(survivor_set):
        if cfg in seen:
            continue
        orbit = canon.config_orbit(s, cfg)
        if not orbit <= survivor_set:
            missing = sorted(orbit - survivor_set)[:3]
            raise AssertionError(
                f"orbit escapes the survivor set at {missing}; shard scan incomplete?"
            )
        seen |= orbit
        geo_reps.append(min(orbit))
    merged: dict[bytes, list] = {}
    for cfg in geo_reps:
        words = canon.normalize_words(trace_gluing(s, cfg))
        merged.setdefault(canon.canonical_key(Surface(s, words)), []).append(words)
    records = []
    for key in sorted(merged):
        members = sorted(merged[key], key=canon.words_sort_key)
        words = members[0]
        f = Surface(s, words)
        flags = tuple(topology.disk_flags(f))
        for other in members[1:]:
            other_prof = sorted(
                (len(w), fl) for w, fl in zip(other, topology.disk_flags(Surface(s, other)))
            )
            prof = sorted((len(w), fl) for w, fl in zip(words, flags))
            if prof != other_prof:
                raise AssertionError(
                    f"merged classes disagree on flags: {words} vs {other}"
                )
        verdict = algebra.pi1_trivial(f, cap=coset_cap)
        if verdict.status == "finite":
            pi1 = f"finite:{verdict.order}"
        else:
            pi1 = verdict.status
        records.append(
            SurfaceRecord(
                complexity=s.complexity,
                skeleton_index=s.index,
                disks=words,
                flags=flags,
                acyclic=True,
                spine=all(t for _, t in flags),
                pi1=pi1,
            )
        )
    records.sort(key=lambda r: (r.skeleton_index, _record_key(r)))
    return records


def _record_key(r: SurfaceRecord) -> bytes:
    return ";".join(",".join(str(x) for x in w) for w in r.disks).encode()


def classify(
    t: int,
    min_disk_len: int = 1,
    jobs: int = 1,
    shards: int | None = None,
    out_dir: str | None = None,
    coset_cap: int = algebra.DEFAULT_COSET_CAP,
    skeleton_indices=None,
    progress=None,
) -> ClassificationResult:
    """Classify complexity t end to end.

    With out_dir, results persist incrementally per skeleton and a matching
    interrupted run resumes where it stopped.
    """
    if t < 1:
        raise ValueError("complexity must be at least 1")
    skeleta = enumerate_skeleta(t)
    if skeleton_indices is not None:
        skeleta = tuple(s for s in skeleta if s.index in set(skeleton_indices))
    result = ClassificationResult(t, min_disk_len)

    manifest = None
    if out_dir is not None:
        manifest = _Manifest(out_dir, t, min_disk_len, coset_cap)

    pool = Pool(jobs) if jobs > 1 else None
    try:
        for s in skeleta:
            if manifest is not None and manifest.has_skeleton(s.index):
                records = manifest.load_skeleton(s.index)
            else:
                started = time.time()
                records = classify_skeleton(
                    s, min_disk_len, jobs=jobs, shards=shards,
                    coset_cap=coset_cap, pool=pool,
                )
                if manifest is not None:
                    manifest.store_skeleton(s.index, records, time.time() - started)
            if progress is not None:
                progress(s, records)
            result.records.extend(records)
    finally:
        if pool is not None:
            pool.close()
            pool.join()
    if manifest is not None:
        manifest.finalize(result)
    return result


class _Manifest:
    """Per-complexity run state: options, per-skeleton part files, hashes."""

    def __init__(self, out_dir: str, t: int, min_disk_len: int, coset_cap: int):
        self.dir = out_dir
        self.t = t
        self.options = {
            "complexity": t,
            "min_disk_len": min_disk_len,
            "coset_cap": coset_cap,
        }
        os.makedirs(out_dir, exist_ok=True)
        self.path = os.path.join(out_dir, f"manifest_t{t}.json")
        from . import __version__

        self.state = {
            "options": self.options,
            "skeletons": {},
            "version": 1,
            "tool": __version__,
        }
        if os.path.exists(self.path):
            with open(self.path, encoding="utf-8") as fh:
                prev = json.load(fh)
            if prev.get("options") == self.options:
                self.state = prev
            # differing options: start over, old part files are overwritten

    def _part_path(self, index: int) -> str:
        return os.path.join(self.dir, f"surfaces_t{self.t}_g{index}.jsonl")

    def has_skeleton(self, index: int) -> bool:
        meta = self.state["skeletons"].get(str(index))
        path = self._part_path(index)
        return (
            meta is not None
            and os.path.exists(path)
            and _sha256(path) == meta["sha256"]
        )

    def load_skeleton(self, index: int) -> list[SurfaceRecord]:
        return read_records(self._part_path(index))

    def store_skeleton(self, index: int, records, elapsed: float) -> None:
        path = self._part_path(index)
        tmp = path + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            for r in records:
                fh.write(r.to_json() + "\n")
        os.replace(tmp, path)
        self.state["skeletons"][str(index)] = {
            "surfaces": len(records),
            "sha256": _sha256(path),
            "seconds": round(elapsed, 2),
        }
        self._write()

    def finalize(self, result: ClassificationResult) -> None:
        combined = os.path.join(self.dir, f"surfaces_t{self.t}.jsonl")
        tmp = combined + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            for r in result.records:
                fh.write(r.to_json() + "\n")
        os.replace(tmp, combined)
        # listing-format twin for eyeball diffs against published tables
        from .formats import ListingRow, format_listing_line

        listing = os.path.join(self.dir, f"listing_t{self.t}.txt")
        with open(listing + ".tmp", "w", encoding="utf-8") as fh:
            for r in result.records:
                row = ListingRow(r.complexity, r.skeleton_index, r.disks, r.flags)
                fh.write(format_listing_line(row) + "\n")
        os.replace(listing + ".tmp", listing)
        self.state["combined"] = {
            "surfaces": result.total,
            "sha256": _sha256(combined),
            "listing_sha256": _sha256(listing),
        }
        self._write()

    def _write(self) -> None:
        tmp = self.path + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(self.state, fh, indent=1, sort_keys=True)
        os.replace(tmp, self.path)


def _sha256(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


# ---------------------------------------------------------------------------
# tables


def emit_table1(results: dict[int, ClassificationResult]) -> str:
    """Surfaces by complexity and number of disks with nontrivial bundles.

    The percentage column is recomputed as round(100*spines/total, 1) from
    the raw integers; the raw fraction is printed alongside.
    """
    ts = sorted(results)
    buckets = max((max(results[t].t_histogram(), default=0) for t in ts), default=0)
    head = ["t", "spines"] + [str(k) for k in range(1, buckets + 1)] + [
        "total",
        "% spines",
        "fraction",
    ]
    lines = ["\t".join(head)]
    for t in ts:
        r = results[t]
        hist = r.t_histogram()
        row = [str(t), str(hist.get(0, 0))]
        row += [str(hist.get(k, 0)) for k in range(1, buckets + 1)]
        pct = round(100 * r.spines / r.total, 1) if r.total else 0.0
        row += [str(r.total), f"{pct}", f"{r.spines}/{r.total}"]
        lines.append("\t".join(row))
    return "\n".join(lines)


def emit_table2(max_complexity: int) -> str:
    """Skeleta by complexity and number of self-loops."""
    rows = []
    width = 0
    for t in range(1, max_complexity + 1):
        c = Counter(skeleton_stats(s)["self_loops"] for s in enumerate_skeleta(t))
        rows.append((t, c))
        width = max(width, max(c) + 1)
    lines = ["\t".join(["t"] + [str(k) for k in range(width)] + ["total"])]
    for t, c in rows:
        lines.append(
            "\t".join(
                [str(t)]
                + [str(c.get(k, 0)) for k in range(width)]
                + [str(sum(c.values()))]
            )
        )
    return "\n".join(lines)


def emit_table3(max_complexity: int) -> str:
    """Skeleta by length of the shortest cycle."""
    lines = ["\t".join(["t", "1", "2", "3", "total"])]
    for t in range(1, max_complexity + 1):
        c = Counter(skeleton_stats(s)["girth"] for s in enumerate_skeleta(t))
        lines.append(
            "\t".join(
                [str(t)]
                + [str(c.get(k, 0)) for k in (1, 2, 3)]
                + [str(sum(c.values()))]
            )
        )
    return "\n".join(lines)


def emit_tables(results: dict[int, ClassificationResult]) -> str:
    if not results:
        raise ValueError("no classification results to tabulate")
    max_t = max(results)
    if sorted(results) != list(range(1, max_t + 1)):
        raise ValueError("incomplete run: need every complexity 1..max")
    parts = [
        "Fake surfaces by complexity and nontrivial-bundle count",
        emit_table1(results),
        "",
        "One-skeleta by number of self-loops",
        emit_table2(max_t),
        "",
        "One-skeleta by shortest cycle",
        emit_table3(max_t),
    ]
    return "\n".join(parts)


def stats_spine_ratio(results: dict[int, ClassificationResult]) -> list[dict]:
    rows = []
    for t in sorted(results):
        r = results[t]
        rows.append(
            {
                "complexity": t,
                "spines": r.spines,
                "total": r.total,
                "percent": round(100 * r.spines / r.total, 1) if r.total else 0.0,
            }
        )
    return rows


# ---------------------------------------------------------------------------
# verification of external files


def verify_file(path, coset_cap: int = algebra.DEFAULT_COSET_CAP) -> dict:
    """Re-derive every stored claim of a surface file and report agreement.

    Mismatches are collected, not raised; parse errors abort with line info.
    """
    from .formats import normalize_orientations  # local to avoid cycle noise

    records = read_records(path)
    report = {"records": len(records), "mismatches": [], "verified": 0}
    for n, rec in enumerate(records, start=1):
        problems = []
        try:
            s = skeleton_by_index(rec.complexity, rec.skeleton_index)
            disks = normalize_orientations(s, rec.disks)
        except ValueError as exc:
            report["mismatches"].append({"record": n, "field": "words", "got": str(exc)})
            continue
        f = Surface(s, disks)
        v = validate_words(s, disks)
        if not v:
            problems.append(("validity", f"{v.kind}: {v.detail}"))
        else:
            acyclic = algebra.is_acyclic(f)
            if rec.acyclic is not None and acyclic != rec.acyclic:
                problems.append(("acyclic", f"derived {acyclic}"))
            if not acyclic:
                problems.append(("acyclic", "record is not acyclic"))
            flags = tuple(topology.disk_flags(f))
            if rec.flags:
                for d, (want, got) in enumerate(zip(rec.flags, flags)):
                    if want != got:
                        problems.append(
                            (
                                f"disk {d + 1} flags",
                                f"stored {_yn(want)} derived {_yn(got)}",
                            )
                        )
            spine = all(t for _, t in flags)
            if rec.spine is not None and spine != rec.spine:
                problems.append(("spine", f"derived {spine}"))
            verdict = algebra.pi1_trivial(f, cap=coset_cap)
            derived_pi1 = (
                f"finite:{verdict.order}" if verdict.status == "finite" else verdict.status
            )
            if rec.pi1 is not None and derived_pi1 != rec.pi1:
                problems.append(("pi1", f"stored {rec.pi1} derived {derived_pi1}"))
        if problems:
            for fieldname, detail in problems:
                report["mismatches"].append(
                    {"record": n, "field": fieldname, "got": detail}
                )
        else:
            report["verified"] += 1
    return report


def _yn(flags: tuple[bool, bool]) -> str:
    return "".join("Y" if b else "N" for b in flags)
