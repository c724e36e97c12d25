"""Command line over the verification service.

Every subcommand builds one JSON request and posts it to the HTTP service;
by default the service runs in-process (no socket), with --server pointing
the same client at a remote instance started via `clusterlab serve`.

Exit codes: 0 all requested checks pass, 1 a check failed, 2 usage or
parse error, 3 checks passed only partially (truncated exploration).
"""

from __future__ import annotations

import argparse
import asyncio
import json
import os
import re
import sys
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import httpx

from . import __version__

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_PARTIAL = 3


@dataclass
class RunConfig:
    """One resolved invocation: command, inputs, limits, output plumbing."""

    command: str
    subcommand: Optional[str] = None
    inputs: Dict[str, Any] = field(default_factory=dict)
    depth: Optional[int] = None
    max_nodes: Optional[int] = None
    max_depth: Optional[int] = None
    jobs: int = 0  # 0 = decide automatically; evaluation is currently serial
    out: Optional[str] = None
    format: str = "json"
    server: Optional[str] = None
    options: Dict[str, Any] = field(default_factory=dict)


@dataclass
class CheckEntry:
    name: str
    status: str
    explored: int = 0
    elapsed_s: float = 0.0


@dataclass
class VerificationReport:
    """Per-check outcome collection used for text rendering and exit codes."""

    entries: List[CheckEntry] = field(default_factory=list)

    def add(self, name: str, status: str, explored: int = 0, elapsed_s: float = 0.0):
        self.entries.append(CheckEntry(name, status, explored, elapsed_s))

    def exit_code(self) -> int:
        statuses = {e.status for e in self.entries}
        if "fail" in statuses:
            return EXIT_FAIL
        if "partial" in statuses or "truncated" in statuses:
            return EXIT_PARTIAL
        return EXIT_PASS

    def lines(self) -> List[str]:
        return [
            f"{e.name}: {e.status}"
            + (f" (explored {e.explored})" if e.explored else "")
            + (f" [{e.elapsed_s:.3f}s]" if e.elapsed_s else "")
            for e in self.entries
        ]


class CliInputError(Exception):
    """Bad file, bad inline JSON, bad flag combination; maps to exit 2."""


def _load_json_arg(text: str) -> Any:
    """File path or inline JSON, decided by the first character."""
    stripped = text.strip()
    if stripped.startswith("{") or stripped.startswith("["):
        try:
            return json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise CliInputError(f"inline JSON does not parse: {exc}") from None
    if not os.path.exists(text):
        raise CliInputError(f"no such file: {text}")
    try:
        with open(text) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise CliInputError(f"{text}: {exc}") from None


def _matrix_payload(arg: str) -> dict:
    data = _load_json_arg(arg)
    if isinstance(data, list):
        data = {"rows": data}
    if not isinstance(data, dict) or "rows" not in data:
        raise CliInputError("matrix argument must be {'n', 'rows'} or a row list")
    return data


def _quiver_payload(arg: str) -> dict:
    data = _load_json_arg(arg)
    if not isinstance(data, dict) or "matrix" not in data:
        raise CliInputError(
            "quiver argument must be {'n', 'matrix', 'frozen', 'action_generators'}"
        )
    return data


def _parse_path(text: str) -> List[int]:
    if not text.strip():
        return []
    try:
        return [int(tok) for tok in re.split(r"[,\s]+", text.strip())]
    except ValueError:
        raise CliInputError(f"mutation path does not parse: {text!r}") from None


async def _request_async(
    method: str, path: str, payload: Optional[dict], server: Optional[str]
) -> Tuple[int, Any]:
    if server:
        async with httpx.AsyncClient(base_url=server, timeout=600.0) as client:
            resp = await client.request(method, path, json=payload)
            return resp.status_code, resp.json()
    from .service.app import app

    transport = httpx.ASGITransport(app=app)
    async with httpx.AsyncClient(
        transport=transport, base_url="http://clusterlab.internal", timeout=600.0
    ) as client:
        resp = await client.request(method, path, json=payload)
        return resp.status_code, resp.json()


def _post(cfg: RunConfig, path: str, payload: dict) -> Any:
    try:
        status, body = asyncio.run(_request_async("POST", path, payload, cfg.server))
    except httpx.HTTPError as exc:
        raise CliInputError(f"service request failed: {exc}") from None
    if status >= 400:
        detail = body.get("detail", body) if isinstance(body, dict) else body
        raise CliInputError(f"{path}: {detail}")
    return body


def _emit(cfg: RunConfig, resp: Any, report: Optional[VerificationReport] = None):
    if cfg.format == "text" and report is not None:
        for line in report.lines():
            print(line)
    elif cfg.format == "text":
        print(json.dumps(resp, indent=2, sort_keys=True))
    else:
        print(json.dumps(resp, indent=2))


def _write_out(cfg: RunConfig, data: Any) -> bool:
    if cfg.out:
        with open(cfg.out, "w") as fh:
            json.dump(data, fh, indent=2)
            fh.write("\n")
        return True
    return False


def _status_exit(status: str) -> int:
    if status == "pass":
        return EXIT_PASS
    if status == "partial":
        return EXIT_PARTIAL
    return EXIT_FAIL


def _run_matrix(cfg: RunConfig) -> int:
    payload: Dict[str, Any] = {"matrix": cfg.inputs["matrix"]}
    if cfg.subcommand == "check":
        resp = _post(cfg, "/matrix/check", payload)
        _emit(cfg, resp)
        return EXIT_PASS if resp["sign_skew_symmetric"] else EXIT_FAIL
    if cfg.subcommand == "mutate":
        payload["path"] = cfg.options["path"]
        resp = _post(cfg, "/matrix/mutate", payload)
        if not _write_out(cfg, resp):
            _emit(cfg, resp)
        return EXIT_PASS
    payload["depth"] = cfg.depth
    resp = _post(cfg, "/matrix/verify-total", payload)
    _emit(cfg, resp)
    return EXIT_PASS if resp["ok"] else EXIT_FAIL


def _run_seed(cfg: RunConfig) -> int:
    payload = {"matrix": cfg.inputs["matrix"], "path": cfg.options["path"]}
    endpoint = {
        "mutate": "/seed/mutate",
        "fpoly": "/seed/fpoly",
        "gvec": "/seed/gvec",
    }[cfg.subcommand]
    resp = _post(cfg, endpoint, payload)
    if not _write_out(cfg, resp):
        _emit(cfg, resp)
    return EXIT_PASS


def _run_verify(cfg: RunConfig) -> int:
    payload: Dict[str, Any] = {"matrix": cfg.inputs["matrix"], "depth": cfg.depth}
    started = time.perf_counter()
    if cfg.subcommand == "dualities":
        payload["assumption"] = cfg.options.get("assumption", False)
        payload["dual_mutation"] = cfg.options.get("dual_mutation")
        resp = _post(cfg, "/verify/dualities", payload)
        elapsed = time.perf_counter() - started
        report = VerificationReport()
        for name, status in resp["checks"].items():
            report.add(name, status)
        if report.entries:
            report.entries[-1].elapsed_s = elapsed
        _emit(cfg, resp, report)
        return report.exit_code()
    endpoint = "/verify/assumption" if cfg.subcommand == "assumption" else "/verify/yhat"
    if cfg.subcommand == "assumption":
        payload["reroot"] = cfg.options.get("reroot", True)
    resp = _post(cfg, endpoint, payload)
    elapsed = time.perf_counter() - started
    report = VerificationReport()
    report.add(resp["name"], resp["status"], resp.get("explored", 0), elapsed)
    _emit(cfg, resp, report)
    return report.exit_code()


def _run_fan(cfg: RunConfig) -> int:
    payload = {
        "matrix": cfg.inputs["matrix"],
        "depth": cfg.depth,
        "check": cfg.options.get("check", False),
        "samples": cfg.options.get("samples", 0),
        "rng_seed": cfg.options.get("rng_seed", 0),
    }
    resp = _post(cfg, "/fan", payload)
    if _write_out(cfg, resp):
        summary = {
            "cone_count": resp["cone_count"],
            "truncated": resp["truncated"],
            "out": cfg.out,
        }
        if resp.get("report") is not None:
            summary["check_ok"] = resp["report"]["ok"]
        _emit(cfg, summary)
    else:
        _emit(cfg, resp)
    if resp.get("report") is not None and not resp["report"]["ok"]:
        return EXIT_FAIL
    return EXIT_PARTIAL if resp["truncated"] else EXIT_PASS


def _run_fold(cfg: RunConfig) -> int:
    payload: Dict[str, Any] = {"quiver": cfg.inputs["quiver"]}
    if cfg.subcommand == "check":
        resp = _post(cfg, "/fold/check", payload)
        _emit(cfg, resp)
        return EXIT_PASS if resp["admissible"] else EXIT_FAIL
    if cfg.subcommand == "mutate":
        payload["vertex"] = cfg.options["vertex"]
        resp = _post(cfg, "/fold/mutate", payload)
        if not _write_out(cfg, resp):
            _emit(cfg, resp)
        return EXIT_PASS
    if cfg.subcommand == "fold-matrix":
        resp = _post(cfg, "/fold/fold-matrix", payload)
        if not _write_out(cfg, resp):
            _emit(cfg, resp)
        return EXIT_PASS
    if cfg.subcommand == "frame":
        resp = _post(cfg, "/fold/frame", payload)
        if not _write_out(cfg, resp):
            _emit(cfg, resp)
        return EXIT_PASS
    payload["depth"] = cfg.depth
    resp = _post(cfg, "/fold/verify", payload)
    report = VerificationReport()
    report.add(resp["name"], resp["status"], resp.get("explored", 0))
    _emit(cfg, resp, report)
    return report.exit_code()


def _run_graph(cfg: RunConfig) -> int:
    if cfg.subcommand == "explore":
        payload = {
            "matrix": cfg.inputs["matrix"],
            "max_nodes": cfg.max_nodes,
            "max_depth": cfg.max_depth,
        }
        resp = _post(cfg, "/graph/explore", payload)
        if _write_out(cfg, resp["graph"]):
            _emit(cfg, {**resp["stats"], "out": cfg.out})
        else:
            _emit(cfg, resp)
        return EXIT_PARTIAL if resp["stats"]["truncated"] else EXIT_PASS
    if cfg.subcommand == "export-dot":
        resp = _post(cfg, "/graph/export-dot", {"graph": cfg.inputs["graph"]})
        if cfg.out:
            with open(cfg.out, "w") as fh:
                fh.write(resp["dot"])
        else:
            sys.stdout.write(resp["dot"])
        return EXIT_PASS
    payload = {"graph": cfg.inputs["graph"], "checks": cfg.options["checks"]}
    started = time.perf_counter()
    resp = _post(cfg, "/graph/verify", payload)
    elapsed = time.perf_counter() - started
    report = VerificationReport()
    for name in cfg.options["checks"]:
        entry = resp["reports"][name]
        report.add(name, entry["status"], entry.get("explored", 0))
    if report.entries:
        report.entries[-1].elapsed_s = elapsed
    _emit(cfg, resp, report)
    return report.exit_code()


def _run_serve(cfg: RunConfig) -> int:
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=cfg.options["host"], port=cfg.options["port"])
    return EXIT_PASS


_RUNNERS = {
    "matrix": _run_matrix,
    "seed": _run_seed,
    "verify": _run_verify,
    "fan": _run_fan,
    "fold": _run_fold,
    "graph": _run_graph,
    "serve": _run_serve,
}


def run(config: RunConfig) -> int:
    """Dispatch one resolved invocation; returns the process exit code."""
    try:
        return _RUNNERS[config.command](config)
    except CliInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def build_parser() -> argparse.ArgumentParser:
    # global flags live on a parent so they parse both before and after the
    # subcommand; SUPPRESS keeps subparser defaults from clobbering values
    # given at the top level
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--server", default=argparse.SUPPRESS,
        help="URL of a running service; default runs in-process",
    )
    common.add_argument(
        "--format", choices=["json", "text"], default=argparse.SUPPRESS,
        help="report format (default json)",
    )
    common.add_argument(
        "--jobs", type=int, default=argparse.SUPPRESS,
        help="worker parallelism (advisory; evaluation is serial)",
    )

    parser = argparse.ArgumentParser(
        prog="clusterlab",
        description="Exact mutation, duality, fan, folding and exchange-graph checks.",
        parents=[common],
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def leaf(subparsers, name, help_text):
        return subparsers.add_parser(name, help=help_text, parents=[common])

    def add_matrix(p):
        p.add_argument("--matrix", required=True,
                       help="matrix file or inline JSON {'n', 'rows'}")

    matrix = sub.add_parser("matrix", help="exchange matrix operations")
    msub = matrix.add_subparsers(dest="subcommand", required=True)
    m_check = leaf(msub, "check", "structural predicates of a matrix")
    add_matrix(m_check)
    m_mut = leaf(msub, "mutate", "mutate along a path")
    add_matrix(m_mut)
    m_mut.add_argument("--path", default="", help="comma-separated 1-based indices")
    m_mut.add_argument("-k", type=int, help="single mutation index")
    m_mut.add_argument("--out", help="write the resulting matrix JSON here")
    m_tot = leaf(msub, "verify-total", "mutation-closure sign check")
    add_matrix(m_tot)
    m_tot.add_argument("--depth", type=int, default=6)

    seed = sub.add_parser("seed", help="labeled seed operations")
    ssub = seed.add_subparsers(dest="subcommand", required=True)
    for name, text in [
        ("mutate", "mutate the principal seed along a path"),
        ("fpoly", "F-polynomials at a path"),
        ("gvec", "g-vectors and C/G matrices at a path"),
    ]:
        p = leaf(ssub, name, text)
        add_matrix(p)
        p.add_argument("--path", default="", help="comma-separated 1-based indices")
        p.add_argument("--out", help="write the JSON result here")

    verify = sub.add_parser("verify", help="pattern verification suites")
    vsub = verify.add_subparsers(dest="subcommand", required=True)
    v_dual = leaf(vsub, "dualities", "per-node duality checks")
    add_matrix(v_dual)
    v_dual.add_argument("--depth", type=int, default=6)
    v_dual.add_argument("--assumption", action="store_true",
                        help="also run the sign lockstep suite")
    v_dual.add_argument("--dual-mutation", type=int, metavar="K",
                        help="also run the initial-mutation suite at K")
    v_ass = leaf(vsub, "assumption", "sign lockstep for C and its twin")
    add_matrix(v_ass)
    v_ass.add_argument("--depth", type=int, default=6)
    v_ass.add_argument("--no-reroot", action="store_true",
                       help="check only from the given root matrix")
    v_yhat = leaf(vsub, "yhat", "coefficient identity in Q(Y)")
    add_matrix(v_yhat)
    v_yhat.add_argument("--depth", type=int, default=4)

    fan = leaf(sub, "fan", "enumerate maximal g-vector cones")
    add_matrix(fan)
    fan.add_argument("--depth", type=int, default=None)
    fan.add_argument("--out", help="write the fan JSON here")
    fan.add_argument("--check", action="store_true",
                     help="verify pairwise intersections are common faces")
    fan.add_argument("--samples", type=int, default=0,
                     help="random points for the covering check")
    fan.add_argument("--rng-seed", type=int, default=0)

    fold = sub.add_parser("fold", help="group actions and folding")
    fsub = fold.add_subparsers(dest="subcommand", required=True)

    def add_quiver(p):
        p.add_argument("--quiver", required=True,
                       help="quiver file or inline JSON")

    f_check = leaf(fsub, "check", "admissibility of the action")
    add_quiver(f_check)
    f_mut = leaf(fsub, "mutate", "orbit mutation at a vertex")
    add_quiver(f_mut)
    f_mut.add_argument("--vertex", type=int, required=True)
    f_mut.add_argument("--out")
    f_fold = leaf(fsub, "fold-matrix", "fold to the orbit matrix")
    add_quiver(f_fold)
    f_fold.add_argument("--out")
    f_frame = leaf(fsub, "frame", "attach frozen copies of all vertices")
    add_quiver(f_frame)
    f_frame.add_argument("--out")
    f_ver = leaf(fsub, "verify", "admissibility along all orbit walks")
    add_quiver(f_ver)
    f_ver.add_argument("--depth", type=int, default=6)

    graph = sub.add_parser("graph", help="exchange graph enumeration and checks")
    gsub = graph.add_subparsers(dest="subcommand", required=True)
    g_exp = leaf(gsub, "explore", "BFS the exchange graph")
    add_matrix(g_exp)
    g_exp.add_argument("--max-nodes", type=int, default=100000)
    g_exp.add_argument("--max-depth", type=int, default=12)
    g_exp.add_argument("--out", help="write the graph JSON here")
    g_dot = leaf(gsub, "export-dot", "render a graph JSON as DOT")
    g_dot.add_argument("graph", help="graph file produced by explore")
    g_dot.add_argument("--out")
    g_ver = leaf(gsub, "verify", "seed/relabeling theorems on a graph")
    g_ver.add_argument("graph", help="graph file produced by explore")
    g_ver.add_argument(
        "--checks", default="cluster,adjacency,cmatrix,oddrank",
        help="comma-separated subset of cluster,adjacency,cmatrix,oddrank",
    )

    serve = leaf(sub, "serve", "run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(
        command=args.command,
        subcommand=getattr(args, "subcommand", None),
        jobs=getattr(args, "jobs", 0),
        out=getattr(args, "out", None),
        format=getattr(args, "format", "json"),
        server=getattr(args, "server", None),
        depth=getattr(args, "depth", None),
        max_nodes=getattr(args, "max_nodes", None),
        max_depth=getattr(args, "max_depth", None),
    )
    if hasattr(args, "matrix"):
        cfg.inputs["matrix"] = _matrix_payload(args.matrix)
    if hasattr(args, "quiver"):
        cfg.inputs["quiver"] = _quiver_payload(args.quiver)
    if hasattr(args, "graph"):
        cfg.inputs["graph"] = _load_json_arg(args.graph)
    if hasattr(args, "path"):
        path = _parse_path(args.path)
        if getattr(args, "k", None):
            path.append(args.k)
        cfg.options["path"] = path
    if cfg.command == "verify":
        cfg.options["assumption"] = getattr(args, "assumption", False)
        cfg.options["dual_mutation"] = getattr(args, "dual_mutation", None)
        cfg.options["reroot"] = not getattr(args, "no_reroot", False)
    if cfg.command == "fan":
        cfg.options["check"] = args.check
        cfg.options["samples"] = args.samples
        cfg.options["rng_seed"] = args.rng_seed
    if cfg.command == "fold" and cfg.subcommand == "mutate":
        cfg.options["vertex"] = args.vertex
    if cfg.command == "graph" and cfg.subcommand == "verify":
        cfg.options["checks"] = [
            tok for tok in args.checks.split(",") if tok
        ]
    if cfg.command == "serve":
        cfg.options["host"] = args.host
        cfg.options["port"] = args.port
    return cfg


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
    except CliInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
