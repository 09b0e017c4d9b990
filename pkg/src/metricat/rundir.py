"""Run-directory layout for chain builds.

    out/
      manifest.json            command, config, grid, seed, budgets, versions,
                               wall clock, outcome
      stages/K_000.json        one space document per stage
      embeddings/k_000_001.json  stage embeddings, endpoints by file reference
      spans/step_000.json      processed span log + skip count per step
      audit.json               written by the auditor

Every document is canonical JSON written atomically; rebuilding a chain with
the same manifest settings reproduces every byte except the manifest's
wall_clock_seconds field.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from . import __about__
from .errors import SchemaError
from .fraisse import (
    AuditReport, ChainStage, DistanceGrid, IsometryCatalog, Span, SpanRecord,
    catalog_isometries, enumerate_spaces,
)
from .serialization import (
    map_from_json, map_to_json, rat_from_json, rat_to_json, read_json,
    space_from_json, space_to_json, write_json,
)
from .spaces import MetMap, Space

MANIFEST = "manifest.json"
FORMAT_VERSION = 1


def _stage_name(n: int) -> str:
    return f"stages/K_{n:03d}.json"


def _embedding_name(n: int) -> str:
    return f"embeddings/k_{n:03d}_{n + 1:03d}.json"


def _span_name(n: int) -> str:
    return f"spans/step_{n:03d}.json"


def grid_to_json(grid: DistanceGrid) -> dict:
    return {"values": [rat_to_json(v) for v in grid.values], "max_size": grid.max_size}


def grid_from_json(node, pointer: str = "") -> DistanceGrid:
    if not isinstance(node, dict) or "values" not in node or "max_size" not in node:
        raise SchemaError("expected a grid object with values and max_size", pointer)
    values = tuple(
        rat_from_json(v, f"{pointer}/values/{i}", [])
        for i, v in enumerate(node["values"])
    )
    return DistanceGrid(values, node["max_size"])


def _span_record_to_json(record: SpanRecord, stage_ref: str, next_ref: str) -> dict:
    return {
        "u": map_to_json(record.span.u, cod_ref=stage_ref),
        "h": map_to_json(record.span.h),
        "copy": map_to_json(record.copy, cod_ref=next_ref),
    }


def write_chain(out_dir: str, stages, manifest: dict) -> None:
    """Persist every stage, embedding, and span log, then the manifest."""
    for stage in stages:
        write_json(os.path.join(out_dir, _stage_name(stage.index)),
                   space_to_json(stage.space))
    for stage in stages:
        if stage.embedding is None:
            continue
        write_json(
            os.path.join(out_dir, _embedding_name(stage.index)),
            map_to_json(stage.embedding,
                        dom_ref=_stage_name(stage.index),
                        cod_ref=_stage_name(stage.index + 1)),
        )
        write_json(
            os.path.join(out_dir, _span_name(stage.index)),
            {
                "stratum": stage.stratum,
                "coverage_complete": stage.coverage_complete,
                "skipped": stage.skipped,
                "processed": [
                    _span_record_to_json(r, _stage_name(stage.index),
                                         _stage_name(stage.index + 1))
                    for r in stage.span_log
                ],
            },
        )
    write_json(os.path.join(out_dir, MANIFEST), manifest)


def make_manifest(command: str, grid: DistanceGrid, policy: str, seed: int,
                  steps: int, budgets: dict, outcome: dict,
                  wall_clock_seconds: float) -> dict:
    return {
        "command": command,
        "config": {"steps": steps, "policy": policy, "seed": seed},
        "grid": grid_to_json(grid),
        "policy": policy,
        "seed": seed,
        "budgets": budgets,
        "versions": {"metricat": __about__.__version__, "format": FORMAT_VERSION},
        "outcome": outcome,
        "wall_clock_seconds": wall_clock_seconds,
    }


@dataclass(frozen=True)
class LoadedRun:
    manifest: dict
    stages: tuple[ChainStage, ...]
    grid: DistanceGrid


def load_chain(out_dir: str) -> LoadedRun:
    """Rebuild the stage list (spaces, embeddings, logs) from disk."""
    manifest_path = os.path.join(out_dir, MANIFEST)
    if not os.path.exists(manifest_path):
        raise SchemaError(f"no manifest at {manifest_path}", "")
    manifest = read_json(manifest_path)
    if not isinstance(manifest, dict) or "grid" not in manifest:
        raise SchemaError("manifest missing grid", "/grid")
    grid = grid_from_json(manifest["grid"], "/grid")

    spaces: list[Space] = []
    n = 0
    while os.path.exists(os.path.join(out_dir, _stage_name(n))):
        spaces.append(space_from_json(read_json(os.path.join(out_dir, _stage_name(n)))))
        n += 1
    if not spaces:
        raise SchemaError(f"no stages under {out_dir}", "")

    def resolver(ref: str) -> Space:
        path = os.path.normpath(os.path.join(out_dir, ref))
        return space_from_json(read_json(path))

    stages: list[ChainStage] = []
    for i, space in enumerate(spaces):
        emb_path = os.path.join(out_dir, _embedding_name(i))
        embedding = None
        span_log: tuple[SpanRecord, ...] = ()
        skipped = 0
        stratum = i
        coverage = True
        if os.path.exists(emb_path):
            embedding = map_from_json(read_json(emb_path), resolver=resolver)
            span_path = os.path.join(out_dir, _span_name(i))
            if os.path.exists(span_path):
                doc = read_json(span_path)
                stratum = doc.get("stratum", i)
                coverage = doc.get("coverage_complete", True)
                skipped = doc.get("skipped", 0)
                records = []
                for j, raw in enumerate(doc.get("processed", ())):
                    u = map_from_json(raw["u"], f"/processed/{j}/u", resolver=resolver)
                    h = map_from_json(raw["h"], f"/processed/{j}/h")
                    copy = map_from_json(raw["copy"], f"/processed/{j}/copy",
                                         resolver=resolver)
                    records.append(SpanRecord(Span(u, h), copy))
                span_log = tuple(records)
        else:
            coverage = bool(manifest.get("outcome", {}).get("complete", True))
        stages.append(ChainStage(i, space, embedding, span_log, skipped,
                                 stratum, coverage))
    return LoadedRun(manifest, tuple(stages), grid)


def rebuild_catalog(grid: DistanceGrid) -> IsometryCatalog:
    return catalog_isometries(enumerate_spaces(grid), max_size=grid.max_size)


def audit_to_json(report: AuditReport) -> dict:
    return {
        "ok": report.ok,
        "stages": [
            {
                "stage": audit.stage,
                "checked": audit.checked,
                "missing": [
                    {"stage": w.stage, "h": map_to_json(w.h), "u": map_to_json(w.u)}
                    for w in audit.missing
                ],
            }
            for audit in report.stages
        ],
    }


def write_audit(out_dir: str, report: AuditReport) -> None:
    write_json(os.path.join(out_dir, "audit.json"), audit_to_json(report))
