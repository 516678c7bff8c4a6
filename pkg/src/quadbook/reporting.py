"""Input documents, deterministic reports, and the cross-validation battery.

The structured format mirrors the domain types one to one and round-trips
through the input schema.  Every list in a report is emitted in a fixed order
so identical inputs produce byte-identical output, independently of the
parallelism degree used to compute them.
"""

from __future__ import annotations

import re
from concurrent import futures
from typing import Iterable

from .classify import (
    classify_complex,
    classify_real,
    d_values,
    double_partition,
    expected_homology,
    normal_form,
    normal_form_labelled,
    partition_configuration,
    rotate_parts,
)
from .complexes import GradedGroup, dual_complex
from .configuration import (
    Configuration,
    ConfigurationError,
    ParseError,
    as_rational,
    complexify,
    validate,
)
from .openbook import (
    boundary_consistency,
    open_book_complex,
    open_book_real,
    page_homology,
    page_topology,
)
from .splitting import (
    DEFAULT_SUBSET_CAP,
    euler_cellcount,
    homology_Z,
    homology_ZC,
    homology_Zplus,
    splitting_ledger,
)

SCHEMA_VERSION = 1
_ALLOWED_KEYS = {"schema", "k", "n", "lambdas", "labels", "distinguished", "partition"}


def load_document(doc: dict) -> Configuration:
    """Parse the versioned input schema into a configuration."""
    if not isinstance(doc, dict):
        raise ParseError("input document must be a mapping")
    unknown = set(doc) - _ALLOWED_KEYS
    if unknown:
        raise ParseError(f"unknown fields {sorted(unknown)}; schema {SCHEMA_VERSION} rejects them")
    if doc.get("schema") != SCHEMA_VERSION:
        raise ParseError(f"missing or unsupported schema version (expected {SCHEMA_VERSION})")
    distinguished = doc.get("distinguished", 1)
    if not isinstance(distinguished, int):
        raise ParseError("distinguished must be an integer coordinate index")
    try:
        if "partition" in doc:
            if "lambdas" in doc or "k" in doc or "n" in doc:
                raise ParseError("give either a partition or an explicit configuration, not both")
            parts = doc["partition"]
            if not isinstance(parts, list) or not all(isinstance(p, int) for p in parts):
                raise ParseError("partition must be a list of integers")
            return partition_configuration(tuple(parts), distinguished=distinguished)
        for key in ("k", "n", "lambdas"):
            if key not in doc:
                raise ParseError(f"missing field {key!r}")
        vectors = [[as_rational(x) for x in row] for row in doc["lambdas"]]
        if len(vectors) != doc["n"]:
            raise ParseError(f"n = {doc['n']} but {len(vectors)} vectors given")
        labels = tuple(doc.get("labels", ()))
        return Configuration(doc["k"], tuple(tuple(v) for v in vectors), labels, distinguished)
    except ParseError:
        raise
    except ConfigurationError as exc:
        raise ParseError(str(exc)) from exc


def config_document(cfg: Configuration) -> dict:
    """The round-trippable document for a configuration."""
    return {
        "schema": SCHEMA_VERSION,
        "k": cfg.k,
        "n": cfg.n,
        "lambdas": [[str(x) for x in vec] for vec in cfg.lambdas],
        "labels": list(cfg.labels),
        "distinguished": cfg.distinguished,
    }


def graded_document(group: GradedGroup) -> list[dict]:
    return [
        {"degree": d, "rank": r, "torsion": list(chain)}
        for d, r, chain in group.groups
    ]


# ---------------------------------------------------------------------------
# per-command reports


def check_report(cfg: Configuration) -> dict:
    report = validate(cfg)
    out = {"command": "check", "input": config_document(cfg), "ok": report.ok}
    if not report.ok:
        out["witness"] = list(report.witness)
    return out


def dual_complex_report(cfg: Configuration) -> dict:
    K = dual_complex(cfg)
    faces = [sorted(f) for f in K.faces()]
    return {
        "command": "dual-complex",
        "input": config_document(cfg),
        "void": K.is_void,
        "dim": K.dim,
        "maximal_faces": sorted([sorted(f) for f in K.maximal_faces], key=lambda f: (len(f), f)),
        "face_count": len(faces),
        "faces": faces,
    }


def homology_report(cfg: Configuration, spaces: Iterable[str] = ("Z", "ZC", "Zplus"), *,
                    cap: int = DEFAULT_SUBSET_CAP, ledger: bool = True) -> dict:
    out = {
        "command": "homology",
        "input": config_document(cfg),
        "euler": euler_cellcount(cfg),
        "spaces": {},
    }
    for space in spaces:
        led = splitting_ledger(cfg, space, cap=cap)
        entry = {"table": graded_document(led.total)}
        if ledger:
            entry["contributing_subsets"] = [
                {"subset": list(J), "groups": graded_document(g)}
                for J, g in led.entries
            ]
        out["spaces"][space] = entry
    return out


def classify_report(cfg: Configuration) -> dict:
    partition, classes = normal_form_labelled(cfg)
    real = classify_real(partition)
    cplx = classify_complex(partition)
    out = {
        "command": "classify",
        "input": config_document(cfg),
        "normal_form": list(partition.parts),
        "classes": [list(c) for c in classes],
        "d_values": list(d_values(partition)),
        "real": {
            "kind": real.kind,
            "summands": [list(s.dims) for s in real.summands],
            "symbol": real.render(),
            "flags": list(real.hypotheses.flags()),
        },
        "complex": {
            "kind": cplx.kind,
            "summands": [list(s.dims) for s in cplx.summands],
            "symbol": cplx.render(),
            "flags": list(cplx.hypotheses.flags()),
        },
    }
    note = real.annotation()
    if note:
        out["real"]["annotation"] = note
    return out


def open_book_report(cfg: Configuration, coordinate: int, *, variant: str = "complex") -> dict:
    if variant == "real":
        structure = open_book_real(cfg, coordinate)
    elif variant == "complex":
        structure = open_book_complex(cfg, coordinate)
    else:
        raise ParseError(f"unknown open book variant {variant!r}")
    checks = boundary_consistency(structure)
    out = {
        "command": "open-book",
        "variant": variant,
        "input": config_document(cfg),
        "total_dim": structure.total_dim,
        "monodromy": structure.monodromy,
        "binding": config_document(structure.binding) if structure.binding else None,
        "binding_empty": structure.binding is None,
        "page_label": structure.page_label,
        "consistency": [
            {"name": c.name, "status": c.status, "detail": c.detail} for c in checks
        ],
    }
    if structure.page is not None:
        out["page"] = {
            "case": structure.page.case,
            "symbol": structure.page.render(),
            "dim": structure.page.dim,
            "flags": list(structure.page.flags),
            "homology": graded_document(page_homology(structure.page)),
        }
    else:
        out["page"] = None
    return out


# ---------------------------------------------------------------------------
# cross-validation battery

_FAMILY_RE = re.compile(r"^partitions\s*:?\s*n\s*<=\s*(\d+)$")


def parse_family(spec: str) -> int:
    match = _FAMILY_RE.match(spec.strip())
    if not match:
        raise ParseError(f"unknown family {spec!r}; expected 'partitions:n<=N'")
    return int(match.group(1))


def odd_partitions(limit: int) -> list[tuple[int, ...]]:
    """All cyclic-order tuples with an odd number of positive parts, total <= limit."""
    out = []
    for total in range(3, limit + 1):
        for count in range(3, total + 1, 2):
            out.extend(_compositions(total, count))
    return out


def _compositions(total: int, count: int) -> list[tuple[int, ...]]:
    if count == 1:
        return [(total,)] if total >= 1 else []
    out = []
    for first in range(1, total - count + 2):
        out.extend((first,) + rest for rest in _compositions(total - first, count - 1))
    return out


def _cross_validate_item(parts: tuple[int, ...]) -> dict:
    cfg = partition_configuration(parts)
    partition = normal_form(cfg)
    checks = {}
    h_z = homology_Z(cfg)
    h_zc = homology_ZC(cfg)
    checks["doubling"] = h_zc == homology_Z(complexify(cfg))
    checks["euler"] = h_z.euler() == euler_cellcount(cfg)
    checks["complex-formula"] = expected_homology(classify_complex(partition)) == h_zc
    real = classify_real(partition)
    top = max(h_z.max_degree or 0, expected_homology(real).max_degree or 0)
    checks["real-betti"] = expected_homology(real).betti(top) == h_z.betti(top)
    page_ok = True
    for class_index in range(1, len(parts) + 1):
        rotated = rotate_parts(parts, class_index)
        real_cfg = partition_configuration(rotated)
        real_page = page_homology(page_topology(rotated, 1))
        if real_page != homology_Zplus(real_cfg):
            page_ok = False
        doubled = double_partition(rotated)
        cplx_page = page_homology(page_topology(rotated, 1, complex_case=True))
        if cplx_page != homology_Zplus(partition_configuration(doubled)):
            page_ok = False
    checks["pages"] = page_ok
    return {
        "partition": list(parts),
        "checks": {name: ("pass" if ok else "fail") for name, ok in sorted(checks.items())},
        "ok": all(checks.values()),
    }


def cross_validate(families: Iterable[str], *, jobs: int = 1) -> dict:
    """Run the oracle battery over partition families; deterministic output."""
    limit = max(parse_family(f) for f in families)
    items = odd_partitions(limit)
    if jobs > 1:
        with futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_cross_validate_item, items, chunksize=4))
    else:
        results = [_cross_validate_item(parts) for parts in items]
    ok = all(r["ok"] for r in results)
    return {
        "command": "cross-validate",
        "families": sorted(set(families)),
        "cases": len(results),
        "ok": ok,
        "failures": [r for r in results if not r["ok"]],
        "results": results,
    }


# ---------------------------------------------------------------------------
# text rendering


def _graded_lines(rows: list[dict]) -> list[str]:
    if not rows:
        return ["  (zero)"]
    out = []
    for row in rows:
        label = ""
        if row["rank"] == 1:
            label = "Z"
        elif row["rank"] > 1:
            label = f"Z^{row['rank']}"
        torsion = " + ".join(f"Z/{t}" for t in row["torsion"])
        text = " + ".join(x for x in (label, torsion) if x) or "0"
        out.append(f"  H_{row['degree']} = {text}")
    return out


def render_text(report: dict) -> str:
    command = report.get("command")
    lines: list[str] = []
    if command == "check":
        lines.append("valid: weakly hyperbolic" if report["ok"]
                      else f"INVALID: origin in conv(lambda_J) for J = {report['witness']}")
    elif command == "dual-complex":
        if report["void"]:
            lines.append("dual complex: void (the variety is empty)")
        else:
            lines.append(f"dual complex: dim {report['dim']}, {report['face_count']} faces")
            lines.append("maximal faces:")
            lines.extend(f"  {face}" for face in report["maximal_faces"])
    elif command == "homology":
        lines.append(f"euler characteristic: {report['euler']}")
        for space, entry in sorted(report["spaces"].items()):
            lines.append(f"space {space}:")
            lines.extend(_graded_lines(entry["table"]))
            if "contributing_subsets" in entry:
                lines.append(f"  contributing subsets: {len(entry['contributing_subsets'])}")
    elif command == "classify":
        lines.append(f"normal form: {tuple(report['normal_form'])}")
        lines.append(f"d values: {tuple(report['d_values'])}")
        real = report["real"]
        note = f" [{real['annotation']}]" if "annotation" in real else ""
        lines.append(f"Z = {real['symbol']}{note}")
        for flag in real["flags"]:
            lines.append(f"  flag: {flag}")
        lines.append(f"Z^C = {report['complex']['symbol']}")
    elif command == "open-book":
        lines.append(f"open book ({report['variant']}), total dimension {report['total_dim']}")
        lines.append(f"monodromy: {report['monodromy']}")
        if report["binding_empty"]:
            lines.append("binding: empty")
        else:
            b = report["binding"]
            lines.append(f"binding: n = {b['n']} configuration ({report_binding_summary(b)})")
        if report["page"]:
            page = report["page"]
            lines.append(f"page (case {page['case']}): {page['symbol']}")
            for flag in page["flags"]:
                lines.append(f"  flag: {flag}")
        else:
            lines.append(f"page: {report['page_label']}")
        lines.append("consistency:")
        for c in report["consistency"]:
            lines.append(f"  [{c['status']}] {c['name']}: {c['detail']}")
    elif command == "cross-validate":
        lines.append(f"cases: {report['cases']}")
        lines.append(f"result: {'all checks passed' if report['ok'] else 'MISMATCHES FOUND'}")
        for failure in report["failures"]:
            bad = [k for k, v in failure["checks"].items() if v == "fail"]
            lines.append(f"  partition {tuple(failure['partition'])}: failed {bad}")
    else:
        lines.append(str(report))
    return "\n".join(lines) + "\n"


def report_binding_summary(doc: dict) -> str:
    return f"k = {doc['k']}, labels {', '.join(doc['labels'][:4])}" + ("..." if doc["n"] > 4 else "")
