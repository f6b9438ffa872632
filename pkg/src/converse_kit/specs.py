"""Problem-spec ingestion, dispatch to calculators, and report serialization."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from functools import lru_cache
from importlib import resources

import jsonschema
import numpy as np

from . import __version__
from .applications import convex, density, group_testing, ising, sparse
from .fano import (
    RecoveryCriterion,
    approx_fano_pe_lower,
    fano_pe_lower,
    fano_pe_lower_binary,
    neighborhood_counts,
)
from .measures import ChannelMatrix, FinitePMF, JointPMF, ValidationError, mutual_information
from .oracle.decoding import bayes_optimal_approx_error, bayes_optimal_error
from .report import BoundReport

SCHEMA_VERSION = "1.0"
CSV_COLUMNS = ("result", "field", "value")


@lru_cache(maxsize=None)
def load_schema(name: str) -> dict:
    text = resources.files("converse_kit").joinpath("schemas", f"{name}.json").read_text()
    return json.loads(text)


def validate(instance, name: str):
    try:
        jsonschema.validate(instance, load_schema(name))
    except jsonschema.ValidationError as e:
        where = "/".join(str(p) for p in e.absolute_path) or "<root>"
        raise ValidationError(f"{name} schema violation at {where}: {e.message}") from None


def parse_json_text(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ValidationError(f"malformed JSON at line {e.lineno}, column {e.colno}: {e.msg}") from None


def canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def input_digest(spec: dict) -> str:
    return hashlib.sha256(canonical(spec).encode()).hexdigest()


# ---------------------------------------------------------------------------
# dispatch


def _generic(params: dict, mode: str | None) -> list[BoundReport]:
    prior = FinitePMF(params["prior"])
    ch = ChannelMatrix(params["channel"])
    mi = mutual_information(JointPMF.from_channel(prior, ch))
    m = prior.alphabet_size
    uniform = bool(np.allclose(prior.mass, 1.0 / m, rtol=0, atol=1e-12))
    inter = {"mutual_information": mi, "m": m, "bayes_error": bayes_optimal_error(prior, ch),
             "uniform_prior": uniform}
    notes = [] if uniform else ["Fano bounds here assume a uniform prior; this prior is not uniform"]
    if mode == "approximate":
        if "distance" not in params or "threshold" not in params:
            raise ValidationError("approximate mode needs distance and threshold")
        rc = RecoveryCriterion(params["distance"], params["threshold"])
        if rc.v_size != m:
            raise ValidationError("distance table rows must match the prior")
        nmax = neighborhood_counts(rc).n_max
        pe = approx_fano_pe_lower(mi, m, nmax) if nmax < m else 0.0
        inter.update({"n_max": nmax, "bayes_error_approx": bayes_optimal_approx_error(prior, ch, rc)})
        prov = ["approximate-recovery Fano bound"]
    elif m == 2:
        pe = fano_pe_lower_binary(mi)
        prov = ["binary Fano bound with inverse binary entropy"]
    else:
        pe = fano_pe_lower(mi, m)
        prov = ["Fano bound for uniform V"]
    return [BoundReport("pe_lower", pe, "probability", vacuous=pe == 0,
                        intermediates=inter, provenance=prov, notes=notes)]


def run_spec(spec: dict) -> list[BoundReport]:
    """Validate a problem spec and evaluate every bound it asks for."""
    validate(spec, "problem_spec")
    kind, mode, p = spec["kind"], spec.get("mode"), spec["parameters"]
    if kind == "group-testing":
        gs = group_testing.GroupTestingSpec(p["p"], p["k"], p.get("eps", 0.0), p.get("delta", 0.0),
                                            p.get("L"), p.get("alpha"))
        if mode == "approximate":
            return [group_testing.gt_approx_report(gs)]
        rep = group_testing.gt_exact_report(gs)
        if mode == "adaptive":
            rep.provenance.append("adaptive designs: same per-test ceiling by adaptive tensorization")
        return [rep]
    if kind == "ising":
        s = ising.IsingSpec(p["p"], p["lambda"], p.get("delta", 0.0), p.get("alpha"))
        fn = {"approximate": ising.ising_approx_report, "adaptive": ising.ising_adaptive_report}.get(
            mode, ising.ising_exact_report)
        return [fn(s)]
    if kind == "erdos-renyi":
        return [ising.erdos_renyi_report(p["p"], p["q"], p.get("delta", 0.0))]
    if kind == "sparse-regression":
        count = p.get("n_max_count", "paper")
        out = []
        if "frob_sq" in p:
            s = sparse.SparseRegressionSpec(p["p"], p["k"], p["sigma"], p["frob_sq"])
            out.append(sparse.sparse_minimax_risk_lower(s, count))
        if "gamma" in p and "delta" in p:
            out.append(sparse.sparse_samples_lower(p["p"], p["k"], p["sigma"], p["gamma"], p["delta"], count))
        if not out:
            raise ValidationError("sparse-regression needs frob_sq, or gamma together with delta")
        return out
    if kind == "density":
        s = density.DensitySpec(p["eta"], p["c_lo"], p["c_hi"], p.get("n"), p.get("delta"))
        out = []
        if s.n is not None:
            out.append(density.density_minimax_risk_lower(s))
        if s.delta is not None:
            out.append(density.density_samples_lower(s))
        if not out:
            raise ValidationError("density needs n, delta, or both")
        return out
    if kind == "convex-opt":
        s = convex.ConvexOptSpec(p["sigma"], p["delta"])
        return [convex.scvx_queries_report(s, p.get("eps_prime"))]
    if kind == "generic-hypothesis-test":
        return _generic(p, mode)
    raise ValidationError(f"unknown kind {kind!r}")  # unreachable after schema validation


# ---------------------------------------------------------------------------
# serialization


def encode_number(x):
    if isinstance(x, (bool, str)) or x is None:
        return x
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    return x


def build_report(spec: dict, results: list[BoundReport]) -> dict:
    rows = []
    for r in results:
        d = r.as_dict()
        d["value"] = encode_number(d["value"])
        d["intermediates"] = {k: encode_number(v) for k, v in d["intermediates"].items()}
        rows.append(d)
    report = {
        "schema_version": SCHEMA_VERSION,
        "tool": "converse-kit",
        "tool_version": __version__,
        "input_digest": input_digest(spec),
        "kind": spec["kind"],
        "mode": spec.get("mode"),
        "units": "nats",
        "results": rows,
    }
    try:
        validate(report, "report")
    except ValidationError as e:
        # the input passed validation, so a malformed report is a defect in this tool
        raise RuntimeError(f"emitted report failed its schema: {e}") from None
    return report


def _flatten(report: dict):
    for r in report["results"]:
        name = r["name"]
        yield name, "value", r["value"]
        yield name, "units", r["units"]
        yield name, "vacuous", r["vacuous"]
        yield name, "asymptotic", r["asymptotic"]
        for k, v in r["intermediates"].items():
            yield name, f"intermediates.{k}", v
        for i, s in enumerate(r["provenance"]):
            yield name, f"provenance.{i}", s
        for i, s in enumerate(r["notes"]):
            yield name, f"notes.{i}", s


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "null"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def report_to_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=False) + "\n"


def report_to_csv(report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("schema_version", report["schema_version"], ""))
    w.writerow(("input_digest", report["input_digest"], ""))
    w.writerow(CSV_COLUMNS)
    for row in _flatten(report):
        w.writerow((row[0], row[1], _cell(row[2])))
    return buf.getvalue()


def _display(v) -> str:
    if isinstance(v, float):
        return f"{v:.12g}"
    return _cell(v)


def report_to_table(report: dict) -> str:
    lines = [f"converse-kit {report['tool_version']}  kind={report['kind']}  mode={report['mode']}",
             f"input digest {report['input_digest']}", "all information quantities in nats", ""]
    rows = [(a, b, _display(c)) for a, b, c in _flatten(report)]
    w0 = max(len(r[0]) for r in rows)
    w1 = max(len(r[1]) for r in rows)
    for a, b, c in rows:
        lines.append(f"{a:<{w0}}  {b:<{w1}}  {c}")
    return "\n".join(lines) + "\n"


def csv_payload(text: str) -> dict:
    """Parse a CSV report back to ``{(result, field): cell}`` for comparisons."""
    rows = list(csv.reader(io.StringIO(text)))
    start = rows.index(list(CSV_COLUMNS)) + 1
    return {(r[0], r[1]): r[2] for r in rows[start:]}
