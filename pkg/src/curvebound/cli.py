"""Thin command-line client for the service.

Every subcommand builds a request, sends it to the service (in-process by
default, or to a remote base URL via --url), and renders the response as
deterministic JSON or CSV: keys sorted, rationals as "p/q" strings, floats
at 15 significant digits, a config echo in every output.  Exit codes:
0 success/certified, 1 certification or property failure, 2 malformed input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import List, Optional, Tuple

import httpx

SWEEP_COLUMNS = (
    "g", "n", "chi", "alpha_c", "k_iterate",
    "lower", "upper_fixed_genus", "upper_penner", "m", "r",
)

DEFAULT_PENNER_CONFIG = {"r": 1, "m": 6, "mode": "exact"}


class ClientError(Exception):
    """Malformed input or a request the service rejected (exit code 2)."""


class ServiceClient:
    """HTTP client; without a URL it runs the ASGI app in-process."""

    def __init__(self, url: Optional[str] = None):
        if url:
            self._client = httpx.Client(base_url=url, timeout=600.0)
        else:
            import warnings

            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                from fastapi.testclient import TestClient

            from .service.app import create_app

            self._client = TestClient(create_app(), raise_server_exceptions=False)

    def post(self, path: str, payload: dict) -> dict:
        try:
            resp = self._client.post(path, json=payload)
        except httpx.HTTPError as exc:
            raise ClientError(f"request to {path} failed: {exc}") from exc
        if resp.status_code in (400, 422):
            raise ClientError(f"{path}: {resp.json().get('detail')}")
        if resp.status_code != 200:
            raise ClientError(f"{path}: unexpected status {resp.status_code}")
        return resp.json()

    def close(self) -> None:
        self._client.close()


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ClientError(f"cannot read JSON from {path}: {exc}") from exc


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_text(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _sig15(x: float) -> float:
    return float(f"{x:.15g}")


def _csv_text(config: dict, columns: Tuple[str, ...], rows: List[dict]) -> str:
    buf = io.StringIO()
    buf.write("# config: " + json.dumps(config, sort_keys=True) + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow(["" if row.get(c) is None else str(row.get(c)) for c in columns])
    return buf.getvalue()


def _parse_cell(text: str):
    """Empty -> None, numeric or "p/q" -> float, anything else -> raw string."""
    text = text.strip()
    if not text:
        return None
    try:
        if "/" in text:
            num, den = text.split("/", 1)
            return float(Fraction(int(num), int(den)))
        return float(text)
    except (ValueError, ZeroDivisionError):
        return text


def read_sweep_csv(path: str) -> Tuple[List[str], List[dict]]:
    """Read an emitted CSV back losslessly: comment lines skipped, numeric
    and "p/q" cells become floats, empty cells None, other cells stay strings."""
    try:
        with open(path, "r", encoding="utf-8", newline="") as fh:
            lines = [l for l in fh.read().splitlines() if l and not l.startswith("#")]
    except OSError as exc:
        raise ClientError(f"cannot read {path}: {exc}") from exc
    if not lines:
        raise ClientError(f"{path} has no data rows")
    reader = csv.reader(lines)
    header = next(reader)
    rows = [{h: _parse_cell(v) for h, v in zip(header, rec)} for rec in reader]
    return header, rows


def cmd_penner_certify(client: ServiceClient, args) -> int:
    spec = _load_json(args.config) if args.config else dict(DEFAULT_PENNER_CONFIG)
    data = client.post("/penner/certify", {"spec": spec})
    doc = {
        "config": data["spec"],
        "certified": data["certified"],
        "start_block": data["start_block"],
        "k_low": data["k_low"],
        "k_high": data["k_high"],
        "t": data["t"],
        "support_trace": data["support_trace"],
        "offending": data["offending"],
        "upper_bound": data["upper_bound"],
    }
    _emit(_json_text(doc), args.out)
    return 0 if data["certified"] else 1


def cmd_penner_sweep(client: ServiceClient, args) -> int:
    req = {"r": args.r, "m_min": args.m_min, "m_max": args.m_max,
           "chi": {"c1": args.chi_c1, "c0": args.chi_c0}}
    if args.jobs is not None:
        req["jobs"] = args.jobs
    data = client.post("/penner/sweep", req)
    _emit(_csv_text(req, SWEEP_COLUMNS, data["rows"]), args.out)
    return 0 if data["all_certified"] else 1


def cmd_symfun_newton_check(client: ServiceClient, args) -> int:
    req = {"degree": args.degree, "trials": args.trials, "seed": args.seed}
    data = client.post("/symfun/newton-check", req)
    rows = [{"seed": r["seed"], "N": r["n"], "pass": "pass" if r["passed"] else "fail"}
            for r in data["rows"]]
    _emit(_csv_text(req, ("seed", "N", "pass"), rows), args.out)
    return 0 if data["all_pass"] else 1


def cmd_symfun_enumerate(client: ServiceClient, args) -> int:
    req = {"degree": args.degree, "delta": args.delta}
    data = client.post("/symfun/enumerate", req)
    doc = {"config": req, "count": data["count"], "polynomials": data["polynomials"]}
    _emit(_json_text(doc), args.out)
    return 0


def cmd_homology_lefschetz(client: ServiceClient, args) -> int:
    word = _load_json(args.word)
    if word.get("genus") != args.genus:
        raise ClientError(
            f"--genus {args.genus} does not match the word file genus {word.get('genus')}"
        )
    data = client.post("/homology/lefschetz", {"word": word})
    doc = {
        "config": {"genus": args.genus, "word_file": args.word},
        "genus": data["genus"],
        "letters": data["letters"],
        "trace": data["trace"],
        "lefschetz": data["lefschetz"],
    }
    _emit(_json_text(doc), args.out)
    return 0


def cmd_homology_escape(client: ServiceClient, args) -> int:
    matrix = _load_json(args.matrix)
    req = {"matrix": matrix, "cap": args.cap}
    data = client.post("/homology/escape", req)
    doc = {
        "config": {"matrix_file": args.matrix, "cap": args.cap},
        "kind": data["kind"],
        "c": data["c"],
        "period": data["period"],
        "cap": data["cap"],
    }
    _emit(_json_text(doc), args.out)
    return 0


def cmd_bounds_report(client: ServiceClient, args) -> int:
    req = {"genus": args.genus, "punctures": args.punctures, "alpha_c": args.alpha_c}
    data = client.post("/bounds/report", req)
    doc = {"config": req}
    doc.update(data)
    _emit(_json_text(doc), args.out)
    return 0


def cmd_bounds_fit(client: ServiceClient, args) -> int:
    header, rows = read_sweep_csv(args.infile)
    for col in (args.x_col, args.y_col):
        if col not in header:
            raise ClientError(f"column {col!r} not found in {args.infile} (has {header})")
    points = []
    for row in rows:
        x, y = row.get(args.x_col), row.get(args.y_col)
        if x is None or y is None:
            continue
        if isinstance(x, str) or isinstance(y, str):
            raise ClientError(
                f"non-numeric cell in column {args.x_col if isinstance(x, str) else args.y_col!r}"
            )
        points.append((x, y))
    if not points:
        raise ClientError(f"no usable ({args.x_col}, {args.y_col}) points in {args.infile}")
    data = client.post("/bounds/fit", {"points": points})
    doc = {
        "config": {"in": args.infile, "x_col": args.x_col, "y_col": args.y_col},
        "slope": _sig15(data["slope"]),
        "intercept": _sig15(data["intercept"]),
        "r_squared": _sig15(data["r_squared"]),
        "points": data["points"],
    }
    _emit(_json_text(doc), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curvebound",
        description="Translation-length bound certificates, exactly.",
    )
    parser.add_argument("--url", help="base URL of a running service (default: in-process)")
    top = parser.add_subparsers(dest="group", required=True)

    p_penner = top.add_parser("penner", help="block-matrix certificates and sweeps")
    sub = p_penner.add_subparsers(dest="command", required=True)
    certify = sub.add_parser("certify", help="support-vanishing certificate for one spec")
    certify.add_argument("--config", help="spec JSON file (default: all-ones r=1, m=6)")
    certify.add_argument("--out", help="output JSON path (default: stdout)")
    certify.set_defaults(func=cmd_penner_certify)
    sweep = sub.add_parser("sweep", help="certify all-ones specs over a range of m")
    sweep.add_argument("--r", type=int, required=True, help="block dimension")
    sweep.add_argument("--m-min", type=int, required=True)
    sweep.add_argument("--m-max", type=int, required=True)
    sweep.add_argument("--out", required=True, help="output CSV path")
    sweep.add_argument("--jobs", type=int,
                       help="parallel grid points (default: available execution units)")
    sweep.add_argument("--chi-c1", type=int, default=-1, help="chi model slope (default -1)")
    sweep.add_argument("--chi-c0", type=int, default=0, help="chi model offset (default 0)")
    sweep.set_defaults(func=cmd_penner_sweep)

    p_symfun = top.add_parser("symfun", help="symmetric-function identities")
    sub = p_symfun.add_subparsers(dest="command", required=True)
    newton = sub.add_parser("newton-check", help="seeded random Newton-identity trials")
    newton.add_argument("--degree", type=int, required=True, help="max multiset size")
    newton.add_argument("--trials", type=int, required=True)
    newton.add_argument("--seed", type=int, default=0)
    newton.add_argument("--out", help="output CSV path (default: stdout)")
    newton.set_defaults(func=cmd_symfun_newton_check)
    enum = sub.add_parser("enumerate", help="bounded reciprocal polynomials")
    enum.add_argument("--degree", type=int, required=True)
    enum.add_argument("--delta", type=int, required=True)
    enum.add_argument("--out", help="output JSON path (default: stdout)")
    enum.set_defaults(func=cmd_symfun_enumerate)

    p_hom = top.add_parser("homology", help="twist-word actions on homology")
    sub = p_hom.add_subparsers(dest="command", required=True)
    lef = sub.add_parser("lefschetz", help="Lefschetz number of a twist word")
    lef.add_argument("--genus", type=int, required=True)
    lef.add_argument("--word", required=True, help="twist-word JSON file")
    lef.add_argument("--out", help="output JSON path (default: stdout)")
    lef.set_defaults(func=cmd_homology_lefschetz)
    esc = sub.add_parser("escape", help="first iterate with trace above 2, or its period")
    esc.add_argument("--matrix", required=True, help="matrix literal JSON file")
    esc.add_argument("--cap", type=int, help="iteration cap (default: dim^2 + 2)")
    esc.add_argument("--out", help="output JSON path (default: stdout)")
    esc.set_defaults(func=cmd_homology_escape)

    p_bounds = top.add_parser("bounds", help="closed-form bounds and slope fits")
    sub = p_bounds.add_subparsers(dest="command", required=True)
    report = sub.add_parser("report", help="bound report for one signature")
    report.add_argument("--genus", type=int, required=True)
    report.add_argument("--punctures", type=int, required=True)
    report.add_argument("--alpha-c", type=int, required=True)
    report.add_argument("--out", help="output JSON path (default: stdout)")
    report.set_defaults(func=cmd_bounds_report)
    fit = sub.add_parser("fit", help="log-log slope fit over a sweep CSV")
    fit.add_argument("--in", dest="infile", required=True, help="sweep CSV path")
    fit.add_argument("--out", help="output JSON path (default: stdout)")
    fit.add_argument("--x-col", default="m")
    fit.add_argument("--y-col", default="upper_penner")
    fit.set_defaults(func=cmd_bounds_fit)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    client = ServiceClient(args.url)
    try:
        return args.func(client, args)
    except (ClientError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    finally:
        client.close()


if __name__ == "__main__":
    sys.exit(main())
