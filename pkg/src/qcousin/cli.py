"""Manifest-driven command line front end.

Exit codes: 0 when everything was computed and every asserted check passed, 1 when a
verification finding failed, 2 for input errors (syntax, semantics, unsupported requests).
"""

import argparse
import csv
import io
import json
import os
import random
import sys
import time

from . import __version__
from .cech import RelativeComplex, complex_cohomology, h0_injection, verify_l5, verify_l6, verify_l7
from .cousin import build_cousin, default_filtration, verify_cousin
from .errors import ConfigurationError, ParseError, QCousinError, UnsupportedError
from .manifest import DEFAULTS, load_manifest
from .oracle import CommutativeModuleSpec, oracle_pipeline
from .report import FAIL, REPORT, Finding, check, summarize
from .sections import (
    supported_sections,
    verify_b1,
    verify_b2,
    verify_l1,
    verify_l2,
    verify_l3,
    verify_l4,
)
from .skewalg import kappa

__all__ = ["engine_pipeline", "run_command", "run_manifest", "render", "main", "ENV_PREFIX"]

ENV_PREFIX = "QCOUSIN_"
ALL_CLAIMS = ("l1", "l2", "l3", "l4", "l5", "l6", "l7", "emu", "b1", "b2", "props")  # bbiri is an alias of l5
_INT_OVERRIDES = ("pole_max", "window", "seed")


def _pair_key(z1, z2):
    return f"{z1}/{'empty' if z2 is None else z2}"


def engine_pipeline(M, query, params):
    """The oracle's report schema computed by the main engine."""
    n = M.alg.n
    if query == "hilbert":
        degrees = list(params.get("degrees", range(7)))
        return {"query": "hilbert", "degrees": degrees, "dims": M.hilbert_function(degrees)}
    if query == "torsion":
        word = tuple(params["word"])
        degrees = list(params.get("degrees", range(4)))
        T = M.torsion_submodule(word)
        return {"query": "torsion", "word": list(word), "degrees": degrees, "dims": [T.piece(d).rank for d in degrees]}
    if query == "sections":
        sem = params.get("semantics", "ideal")
        return {
            "query": "sections",
            "semantics": sem,
            "dims": {str(z): supported_sections(M, z, sem).dim for z in range(n + 1)},
        }
    if query == "cech":
        levels = list(range(1, params.get("pole_max", 3) + 1))
        out = {}
        for z1 in range(n + 1):
            for z2 in [None] + list(range(z1 + 1)):
                table = {}
                for p in levels:
                    R = RelativeComplex(M, z1, z2, p)
                    for k in R.degrees:
                        table.setdefault(str(k), {})[str(p)] = R.cohomology(k).rank
                out[_pair_key(z1, z2)] = table
        return {"query": "cech", "levels": levels, "relative": out}
    if query == "cousin":
        filt = list(params.get("filtration") or default_filtration(n))
        levels = list(range(1, params.get("pole_max", 3) + 1))
        terms, coh = {}, {}
        for p in levels:
            inst = build_cousin(M, filt, p)
            terms[str(p)] = inst.term_dims()
            coh[str(p)] = inst.cohomology_dims()
        return {"query": "cousin", "filtration": filt, "levels": levels, "term_dims": terms, "cohomology": coh}
    raise ConfigurationError(f"unknown query {query!r}")


# ----------------------------------------------------------------------------------------
# commands


def _default_pair(n, params):
    z1 = params.get("z1", n)
    if "z2" in params:
        return z1, params["z2"]
    return z1, (z1 - 1 if z1 > 0 else None)


def _cmd_hilbert(M, params, ctx):
    res = engine_pipeline(M, "hilbert", {"degrees": params["degrees"]})
    rows = [["degree", "dim"]] + [[str(d), str(v)] for d, v in zip(res["degrees"], res["dims"])]
    return res, [], rows


def _cmd_sections(M, params, ctx):
    n = M.alg.n
    zs = [params["z"]] if params.get("z") is not None else list(range(n + 1))
    out = {}
    findings = []
    rows = [["z", "semantics", "dim", "status"]]
    for z in zs:
        rep = supported_sections(
            M, z, params["semantics"], params["mode"], params["pole_max"], params["window"]
        )
        out[str(z)] = rep.to_dict()
        status = rep.certificate.get("status", "")
        rows.append([str(z), params["semantics"], str(rep.dim), status])
        if status == "unstable":
            findings.append(
                Finding("sections-stability", REPORT, f"z={z}: stage kernels did not stabilize within the window", None, {"z": z})
            )
    return {"query": "sections", "semantics": params["semantics"], "strata": out}, findings, rows


def _cmd_cohomology(M, params, ctx):
    n = M.alg.n
    if "z1" in params:
        pairs = [_default_pair(n, params)]
    else:
        pairs = [(z1, z2) for z1 in range(n + 1) for z2 in [None] + list(range(z1 + 1))]
    out = {}
    findings = []
    rows = [["pair", "i"] + [f"p={p}" for p in range(1, params["pole_max"] + 1)]]
    for z1, z2 in pairs:
        rep = complex_cohomology(lambda p: RelativeComplex(M, z1, z2, p), params["pole_max"], params["window"])
        key = _pair_key(z1, z2)
        out[key] = rep.to_dict()
        for r in rep.csv_rows()[1:]:
            rows.append([key] + r)
        findings.append(check("cech-dd", rep.dd_ok, f"{key}: d o d = 0", None if rep.dd_ok else key))
        findings.append(check("cech-euler", rep.euler_ok, f"{key}: Euler characteristic identity", None if rep.euler_ok else key))
        findings.append(check("cech-commute", rep.commute_ok, f"{key}: transitions commute with differentials", None if rep.commute_ok else key))
    return {"query": "cohomology", "relative": out}, findings, rows


def _cmd_cousin(M, params, ctx):
    filt = list(params.get("filtration") or default_filtration(M.alg.n))
    out = {}
    findings = []
    rows = [["p", "term_dims", "cohomology"]]
    for p in range(1, params["pole_max"] + 1):
        inst = build_cousin(M, filt, p)
        recs = inst.exactness()
        out[str(p)] = {
            "term_dims": inst.term_dims(),
            "cohomology": inst.cohomology_dims(),
            "exact": [r["exact"] for r in recs],
        }
        rows.append([str(p), " ".join(map(str, inst.term_dims())), " ".join(map(str, inst.cohomology_dims()))])
        findings.extend(verify_cousin(inst))
    return {"query": "cousin", "filtration": filt, "levels": out}, findings, rows


def _skipped(claim, why):
    return Finding(claim, REPORT, f"skipped: {why}", None, {})


def _props(M, params):
    """Randomized multiplication-map identities driven by the seed."""
    rng = random.Random(params["seed"])
    nv = M.alg.nvars
    field = M.field
    bad = None
    trials = 12
    for _ in range(trials):
        u = tuple(rng.randint(0, 2) for _ in range(nv))
        v = tuple(rng.randint(0, 2) for _ in range(nv))
        d = rng.randint(0, 2)
        lhs = M.mult_map(d + sum(v), u).matrix.compose(M.mult_map(d, v).matrix)
        k = kappa(u, v)
        c = field.q_power(-k) if k else field.one
        rhs = M.mult_map(d, tuple(a + b for a, b in zip(u, v))).matrix.scaled(c)
        if lhs != rhs:
            bad = f"u={list(u)}, v={list(v)}, d={d}"
            break
    return [check("props", bad is None, f"mult_map composition on {trials} random word pairs (seed {params['seed']})", bad, seed=params["seed"])]


def _emu(M, params):
    n = M.alg.n
    z1, z2 = _default_pair(n, params)
    data = {}
    for p in range(1, params["pole_max"] + 1):
        try:
            Q, H0, f = h0_injection(M, z1, z2, p, params["semantics"])
        except QCousinError as exc:
            data[str(p)] = {"error": str(exc)}
            continue
        data[str(p)] = {
            "quotient_dim": Q.dim,
            "h0_dim": H0.rank,
            "well_defined": f is not None,
            "injective": f is not None and f.rank() == Q.dim,
        }
    return [Finding("emu", REPORT, f"quotient sections against H^0 of the relative complex ({z1},{z2})", None, {"z1": z1, "z2": z2, "levels": data})]


def _cmd_verify(M, params, ctx):
    n = M.alg.n
    claims = params.get("claims") or ALL_CLAIMS
    ses = ctx.get("ses")
    sem = params["semantics"]
    pm = params["pole_max"]
    z1, z2 = _default_pair(n, params)
    findings = []
    for c in claims:
        if c == "l1":
            findings += verify_l1(M, sem, pm)
        elif c == "l2":
            findings += verify_l2(M, sem, pm)
        elif c == "l3":
            findings += verify_l3(M, sem, pm)
        elif c == "l4":
            findings += verify_l4(ses, z1, z2, sem, params["t_max"]) if ses else [_skipped("l4", "no [ses] declared")]
        elif c in ("l5", "bbiri"):
            findings += verify_l5(M, z1, z2, params["t_max"], pm)
        elif c == "l6":
            findings += verify_l6(ses, z1, z2, pm) if ses else [_skipped("l6", "no [ses] declared")]
        elif c == "l7":
            findings += verify_l7(M, pm)
        elif c == "emu":
            findings += _emu(M, params)
        elif c == "b1":
            findings += verify_b1(M)
        elif c == "b2":
            findings += verify_b2(ses[1], params["t_max"], sem) if ses else [_skipped("B2", "no [ses] declared")]
        elif c == "props":
            findings += _props(M, params)
    rows = [["claim", "status", "message", "witness"]]
    rows += [[f.claim, f.status, f.message, f.witness or ""] for f in findings]
    return {"query": "verify", "claims": list(claims)}, findings, rows


_COMPARE_QUERIES = ("hilbert", "sections-ideal", "sections-product", "cech", "cousin")


def _cmd_oracle_compare(M, params, ctx):
    if M.field.spec != "rationals":
        raise UnsupportedError("oracle supports q=1 only")
    spec = CommutativeModuleSpec.from_presented(M)
    findings = []
    out = {}
    rows = [["query", "status"]]
    base = {"degrees": params["degrees"], "pole_max": min(params["pole_max"], 3), "filtration": params.get("filtration")}
    for name in _COMPARE_QUERIES:
        q, _, sem = name.partition("-")
        qp = dict(base, semantics=sem or "ideal")
        eng = engine_pipeline(M, q, qp)
        ora = oracle_pipeline(spec, q, qp, M.field.spec)
        same = json.dumps(eng, sort_keys=True) == json.dumps(ora, sort_keys=True)
        out[name] = {"engine": eng, "oracle": ora, "equal": same}
        rows.append([name, "equal" if same else "differs"])
        findings.append(check(f"oracle-{name}", same, f"{name}: engine and oracle reports agree", None if same else _first_difference(eng, ora)))
    return {"query": "oracle-compare", "comparisons": out}, findings, rows


def _first_difference(a, b, path=""):
    if isinstance(a, dict) and isinstance(b, dict):
        for k in sorted(set(a) | set(b)):
            if a.get(k) != b.get(k):
                return _first_difference(a.get(k), b.get(k), f"{path}/{k}")
        return None
    return f"{path or '/'}: engine {a!r}, oracle {b!r}"


_COMMANDS = {
    "hilbert": _cmd_hilbert,
    "sections": _cmd_sections,
    "cohomology": _cmd_cohomology,
    "cousin": _cmd_cousin,
    "verify": _cmd_verify,
    "oracle-compare": _cmd_oracle_compare,
}


def run_command(manifest, overrides=None, timing=False):
    """Execute a parsed manifest; returns (report dict, exit code, csv rows)."""
    overrides = {k: v for k, v in (overrides or {}).items() if v is not None}
    params = manifest.effective_parameters()
    params.setdefault("degrees", tuple(range(7)))
    params.update(overrides)
    if params["semantics"] not in ("ideal", "product"):
        raise ConfigurationError(f"unknown semantics {params['semantics']!r}")
    for k in ("pole_max", "window"):
        if int(params[k]) < 1:
            raise ConfigurationError(f"{k} must be positive")
    _, mods, maps = manifest.build()
    name = params.get("module") or next(iter(mods))
    params["module"] = name
    M = mods[name]
    ctx = {"ses": (maps[manifest.ses[0]], maps[manifest.ses[1]]) if manifest.ses else None}
    t0 = time.perf_counter()
    results, findings, rows = _COMMANDS[manifest.command](M, params, ctx)
    elapsed = time.perf_counter() - t0
    failed = any(f.status == FAIL for f in findings)
    report = {
        "command": manifest.command,
        "engine": {"name": "qcousin", "version": __version__},
        "problem": {"field": manifest.field, "n": manifest.n, "module": name},
        "parameters": {k: (list(v) if isinstance(v, tuple) else v) for k, v in sorted(params.items())},
        "results": results,
        "findings": [f.to_dict() for f in findings],
        "summary": summarize(findings),
        "status": "failed" if failed else "ok",
    }
    if timing:
        report["timing"] = {"seconds": round(elapsed, 6)}
    return report, (1 if failed else 0), rows


def render(report, rows, fmt):
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerows(rows)
        return buf.getvalue()
    return json.dumps(report, sort_keys=True, indent=2, default=str) + "\n"


def run_manifest(path, overrides=None, fmt=None, timing=False):
    """Load, run and render; returns (text, exit code)."""
    m = load_manifest(path)
    report, code, rows = run_command(m, overrides, timing)
    return render(report, rows, fmt or m.format), code


def _env(name):
    v = os.environ.get(ENV_PREFIX + name)
    return v if v not in (None, "") else None


def _build_parser():
    ap = argparse.ArgumentParser(prog="qcousin", description="Cousin complexes over quantum projective space.")
    ap.add_argument("--manifest", help="problem manifest")
    ap.add_argument("--out", help="write the report here instead of stdout")
    ap.add_argument("--format", choices=("json", "csv"))
    ap.add_argument("--semantics", choices=("ideal", "product"))
    ap.add_argument("--pole-max", type=int, dest="pole_max")
    ap.add_argument("--window", type=int)
    ap.add_argument("--seed", type=int)
    ap.add_argument("--timing", action="store_true", help="include wall-clock timing in the report")
    ap.add_argument("--version", action="version", version=f"qcousin {__version__}")
    return ap


def main(argv=None):
    ap = _build_parser()
    args = ap.parse_args(argv)
    try:
        path = args.manifest or _env("MANIFEST")
        if not path:
            raise ConfigurationError("no manifest given (--manifest or QCOUSIN_MANIFEST)")
        fmt = args.format or _env("FORMAT")
        if fmt is not None and fmt not in ("json", "csv"):
            raise ConfigurationError(f"unknown format {fmt!r}")
        overrides = {"semantics": args.semantics or _env("SEMANTICS")}
        for k in _INT_OVERRIDES:
            v = getattr(args, k)
            if v is None and _env(k.upper()) is not None:
                try:
                    v = int(_env(k.upper()))
                except ValueError:
                    raise ConfigurationError(f"{ENV_PREFIX}{k.upper()} must be an integer") from None
            overrides[k] = v
        timing = args.timing or _env("TIMING") in ("1", "true", "yes")
        text, code = run_manifest(path, overrides, fmt, timing)
    except (ParseError, ConfigurationError, QCousinError) as exc:
        print(f"qcousin: error: {exc}", file=sys.stderr)
        return 2
    out = args.out or _env("OUT")
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
