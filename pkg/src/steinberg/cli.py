"""Command-line surface: reports, identity checks, the conjecture experiment and sweeps.

Exit codes: 0 every executed check passed, 1 some check failed, 2 usage or
precondition error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .group import build_parabolic_table
from .lattice import GramTable, lattice
from .rings import is_prime, prime_power

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
CSV_COLUMNS = ["n", "q", "ell", "k", "dimIk", "dimMk", "inX", "irreducible"]
SWEEP_MAX_U = 729


class UsageError(ValueError):
    pass


# --- config validation --------------------------------------------------------------------

def check_nq(n: int, q: int):
    if n < 2:
        raise UsageError(f"n must be at least 2, got {n}")
    try:
        return prime_power(q)[0]
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def check_triple(n: int, q: int, ell: int):
    p = check_nq(n, q)
    if not is_prime(ell):
        raise UsageError(f"l = {ell} is not prime")
    if ell == p:
        raise UsageError(f"l = {ell} equals the characteristic of GF({q})")


def parse_ints(text: str) -> list[int]:
    """'2..4', '2,3,5' or a mix such as '2..3,5'."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..")
            out += range(int(lo), int(hi) + 1)
        elif part:
            out.append(int(part))
    return sorted(set(out))


# --- the Gram cache ---------------------------------------------------------------------------

def cache_dir(arg: str | None) -> Path:
    if arg:
        return Path(arg)
    env = os.environ.get("STEINBERG_CACHE_DIR")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "steinberg"


def cache_path(directory: Path, n: int, q: int) -> Path:
    return directory / f"gram_n{n}_q{q}.json"


def load_gram(directory: Path, n: int, q: int) -> str:
    """Install the (n, q) Gram table from the cache, computing and writing it
    on a miss.  Returns "hit" or "miss"."""
    L = lattice(n, q)
    path = cache_path(directory, n, q)
    if path.exists():
        try:
            data = json.loads(path.read_text())
            ok = (data.get("n"), data.get("q")) == (n, q) \
                and data.get("order") == "row-major-superdiagonal" \
                and data.get("fq_order") == "lex-coefficient"
            if ok:
                L.install_gram_table(GramTable(n, q, tuple(int(c) for c in data["c"])))
                return "hit"
        except (ValueError, KeyError, TypeError):
            pass
    table = L.gram_table()
    directory.mkdir(parents=True, exist_ok=True)
    data = {"n": n, "q": q, "order": "row-major-superdiagonal", "fq_order": "lex-coefficient",
            "c": [str(c) for c in table.c]}
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps(data))
    tmp.replace(path)
    return "miss"


# --- commands: each returns (payload, failures) ----------------------------------------------

def cmd_indices(n: int, q: int, ell: int, **_):
    check_triple(n, q, ell)
    T = build_parabolic_table(n, q, ell)
    rows = [{"J": list(J), "PJ_over_B": over, "index": idx, "nu": nu} for J, over, idx, nu in T.rows]
    return {"n": n, "q": q, "ell": ell, "G_over_B": T.rows[0][2], "kappa1": T.kappa1,
            "kappa2": T.kappa2, "X": list(T.X), "rows": rows}, []


def cmd_filtration(n: int, q: int, ell: int, mode: str = "AUTO", factor_index: int = 0,
                   cache: Path | None = None, irreducibility: bool = False, **_):
    from .filtration import get_filtration
    check_triple(n, q, ell)
    hit = load_gram(cache, n, q) if cache is not None else None
    F = get_filtration(n, q, ell, mode, factor_index)
    rep = F.report()
    rep.cache = hit
    out = rep.as_dict()
    failures = []
    if not rep.gow5_levels_match:
        failures.append({"check": "levels_match_X", "n": n, "q": q, "ell": ell})
    if rep.steinberg_simple != rep.steinberg_simple_expected:
        failures.append({"check": "steinberg_criterion", "n": n, "q": q, "ell": ell})
    if irreducibility:
        from .modrep import gow_conjecture
        verdicts = {g["k"]: g["irreducible"] for g in gow_conjecture(n, q, ell, mode)}
        for lv in out["all_levels"]:
            lv["irreducible"] = verdicts.get(lv["k"])
    return out, failures


def cmd_verify_identities(n: int, q: int, weyl: str = "permutation", **_):
    from .identities import verify_all, verify_theorems
    check_nq(n, q)
    if n < 3:
        raise UsageError("these identities assume n >= 3")
    cases = verify_all(n, q)
    if weyl == "signed":
        cases = [c for c in cases if c.name not in ("ex1_first", "ex1_second", "ex2", "c7")]
        cases += verify_theorems(n, q, "signed")
    records = [c.as_dict() for c in cases]
    failures = [r for r in records if r["verdict"] != "EQUAL"]
    summary = {}
    for r in records:
        s = summary.setdefault(r["name"], {"EQUAL": 0, "NOT EQUAL": 0})
        s[r["verdict"]] += 1
    return {"n": n, "q": q, "weyl": weyl, "summary": summary, "cases": records}, failures


def cmd_conjecture(n: int, q: int, ell: int, mode: str = "AUTO", cache: Path | None = None, **_):
    from .modrep import casa_check, gow_conjecture, module_suite
    check_triple(n, q, ell)
    hit = load_gram(cache, n, q) if cache is not None else None
    gow = gow_conjecture(n, q, ell, mode)
    out = {"n": n, "q": q, "ell": ell, "gow_conjecture": gow,
           "conjecture_holds": all(g["irreducible"] for g in gow)}
    failures = [{"check": "criterion_agrees", "k": g["k"]} for g in gow if not g["agree"]]
    if (q + 1) % ell == 0:
        casa = casa_check(n, q, ell, mode)
        out["casa_check"] = casa
        if not (casa["nonzero"] and casa["irreducible"]):
            failures.append({"check": "casa_check"})
    else:
        out["casa_check"] = None
    suite = module_suite(n, q, ell, mode)
    out["module_suite"] = suite
    if not suite["ok"]:
        failures.append({"check": "module_suite"})
    if hit is not None:
        out["cache"] = hit
    return out, failures


def cmd_explore_socle(n: int, q: int, ell: int, mode: str = "AUTO", cache: Path | None = None, **_):
    from .modrep import explore_socle
    check_triple(n, q, ell)
    if cache is not None:
        load_gram(cache, n, q)
    # exploratory: the comparison is reported, never a failure
    return {"n": n, "q": q, "ell": ell, "layers": explore_socle(n, q, ell, mode)}, []


# --- sweeps -----------------------------------------------------------------------------------

def admissible(ns, qs, ells) -> list[tuple[int, int, int]]:
    out = []
    for n in ns:
        for q in qs:
            p = check_nq(n, q)
            for ell in ells:
                if is_prime(ell) and ell != p:
                    out.append((n, q, ell))
    return sorted(out)


def _sweep_job(args):
    what, n, q, ell, mode, cache, max_u = args
    if q ** (n * (n - 1) // 2) > max_u:
        return {"n": n, "q": q, "ell": ell, "skipped": f"|U| > {max_u}"}, []
    fn = {"filtration": cmd_filtration, "conjecture": cmd_conjecture}[what]
    out, failures = fn(n=n, q=q, ell=ell, mode=mode, cache=Path(cache) if cache else None)
    out.pop("cache", None)  # hit/miss depends on job order
    return out, failures


def cmd_sweep(ns, qs, ells, what: str = "filtration", mode: str = "AUTO", jobs: int = 1,
              cache: Path | None = None, max_u: int = SWEEP_MAX_U, **_):
    triples = admissible(ns, qs, ells)
    if cache is not None:
        for n, q in sorted({(n, q) for n, q, _ in triples}):
            if q ** (n * (n - 1) // 2) <= max_u:
                load_gram(cache, n, q)  # fill the cache before the workers read it
    tasks = [(what, n, q, ell, mode, str(cache) if cache else None, max_u) for n, q, ell in triples]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_sweep_job, tasks))
    else:
        results = [_sweep_job(t) for t in tasks]
    records, failures = [], []
    for (n, q, ell), (rec, fails) in sorted(zip(triples, results), key=lambda x: x[0]):
        records.append(rec)
        failures += [{"n": n, "q": q, "ell": ell, **f} for f in fails]
    return {"what": what, "records": records}, failures


# --- output -----------------------------------------------------------------------------------

def to_csv(payload) -> str:
    """Filtration rows with the fixed column set; one row per k."""
    reports = payload["records"] if "records" in payload else [payload]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for rep in reports:
        if "all_levels" in rep:
            for lv in rep["all_levels"]:
                irr = lv.get("irreducible")
                w.writerow([rep["n"], rep["q"], rep["ell"], lv["k"], lv["dimI"], lv["dimM"],
                            str(lv["inX"]).lower(), "" if irr is None else str(irr).lower()])
        elif "gow_conjecture" in rep:
            for g in rep["gow_conjecture"]:
                w.writerow([rep["n"], rep["q"], rep["ell"], g["k"], "", g["dimM"], "true",
                            str(g["irreducible"]).lower()])
    return buf.getvalue()


def to_text(payload, depth: int = 0) -> str:
    pad = "  " * depth
    lines = []
    if isinstance(payload, dict):
        for k, v in payload.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(to_text(v, depth + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(payload, list):
        for v in payload:
            if isinstance(v, dict):
                lines.append(f"{pad}-")
                lines.append(to_text(v, depth + 1))
            else:
                lines.append(f"{pad}- {v}")
    else:
        lines.append(f"{pad}{payload}")
    return "\n".join(lines)


def render(payload, failures, fmt: str) -> str:
    if fmt == "csv":
        return to_csv(payload)
    body = dict(payload)
    body["passed"] = not failures
    body["failures"] = failures
    if fmt == "text":
        return to_text(body) + "\n"
    return json.dumps(body, indent=2, default=str) + "\n"


# --- argparse ---------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="steinberg",
                                 description="Exact computations with the Steinberg lattice of GL_n(q).")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, ell=True):
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--q", type=int, required=True)
        if ell:
            p.add_argument("--ell", type=int, required=True)
            p.add_argument("--mode", choices=["AUTO", "EXACT", "LOCAL"], default="AUTO")
        p.add_argument("--format", choices=["json", "csv", "text"], default="json")
        p.add_argument("--cache-dir", default=None,
                       help="Gram cache directory (default $STEINBERG_CACHE_DIR or ~/.cache/steinberg)")
        p.add_argument("--no-cache", action="store_true")

    common(sub.add_parser("indices", help="parabolic indices and their l-valuations"))
    p = sub.add_parser("filtration", help="filtration dimensions from the Smith form")
    common(p)
    p.add_argument("--factor-index", type=int, default=0)
    p.add_argument("--irreducibility", action="store_true", help="also test each M(k)")
    p = sub.add_parser("verify-identities", help="exact group-algebra identity checks")
    common(p, ell=False)
    p.add_argument("--weyl", choices=["permutation", "signed"], default="permutation")
    common(sub.add_parser("conjecture", help="eigen-line verdicts, criterion, and the module checks"))
    common(sub.add_parser("explore-socle", help="socle layers against the filtration (exploratory)"))
    p = sub.add_parser("sweep", help="run filtration or conjecture over a grid")
    p.add_argument("--n", required=True, help="e.g. 2..4")
    p.add_argument("--q", required=True, help="e.g. 2,3,4,5")
    p.add_argument("--ell", required=True, help="e.g. 2,3,5,7")
    p.add_argument("--what", choices=["filtration", "conjecture"], default="filtration")
    p.add_argument("--mode", choices=["AUTO", "EXACT", "LOCAL"], default="AUTO")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--max-u", type=int, default=SWEEP_MAX_U, help="skip triples with larger |U|")
    p.add_argument("--format", choices=["json", "csv", "text"], default="json")
    p.add_argument("--cache-dir", default=None)
    p.add_argument("--no-cache", action="store_true")
    return ap


COMMANDS = {
    "indices": cmd_indices,
    "filtration": cmd_filtration,
    "verify-identities": cmd_verify_identities,
    "conjecture": cmd_conjecture,
    "explore-socle": cmd_explore_socle,
}


def run(argv=None) -> tuple[str, int]:
    args = build_parser().parse_args(argv)
    cache = None if args.no_cache else cache_dir(args.cache_dir)
    try:
        if args.command == "sweep":
            payload, failures = cmd_sweep(parse_ints(args.n), parse_ints(args.q), parse_ints(args.ell),
                                          what=args.what, mode=args.mode, jobs=args.jobs,
                                          cache=cache, max_u=args.max_u)
        else:
            kw = {k: v for k, v in vars(args).items() if k not in ("command", "format", "cache_dir", "no_cache")}
            payload, failures = COMMANDS[args.command](cache=cache, **kw)
    except UsageError as exc:
        return json.dumps({"error": str(exc)}) + "\n", EXIT_USAGE
    return render(payload, failures, args.format), EXIT_FAIL if failures else EXIT_OK


def main(argv=None) -> int:
    text, code = run(argv)
    (sys.stderr if code == EXIT_USAGE else sys.stdout).write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
