"""Command-line front end.

Every subcommand reads and writes canonical JSON (sorted keys, sorted edge
lists), so identical invocations produce identical bytes.  All randomness
flows from ``--seed``; ``scan`` derives one seed per instance from it.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import logging
import os
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from itertools import combinations
from math import comb
from pathlib import Path

from .detachment import DetachmentResult, detach
from .embedding_full import (
    EmbeddingInstance,
    bound_min_n,
    check_conditions,
    counterexample,
    embed,
    infeasibility_witness,
)
from .embedding_restricted import PiecesInstance, embed_restricted
from .errors import HyperembedError, IneligibleInstanceError, InvalidHypergraphError, PreconditionError, UnsupportedInstanceError
from .factorization import factorization_exists, generate_r_factorization
from .hypergraph import Hypergraph, dumps
from .verifier import KINDS, verify_detachment, verify_embedding, verify_factorization

log = logging.getLogger("hyperembed")

SCAN_COLUMNS = ["m", "n", "r", "input", "q", "k", "i", "ii", "iii", "iv", "bound", "witness", "outcome", "verify", "seconds"]
DEFAULT_MAX_TRIPLES = 10**6


class UsageError(Exception):
    pass


def derive_seed(seed: int, index: int) -> int:
    digest = hashlib.blake2b(f"{seed}:{index}".encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big") >> 1


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _finish(cert, path) -> int:
    if path:
        _write(path, cert.dumps())
    if not cert.overall:
        for c in cert.failed():
            log.error("check failed: %s (expected %s, got %s)", c.name, c.expected, c.actual)
        return 1
    return 0


# -- subcommands ---------------------------------------------------------


def cmd_embed(args) -> int:
    inst = EmbeddingInstance.from_json(_read_json(args.input), n=args.n, r=args.r)
    log.info("embedding K_%d^3 with %d colors into K_%d^3, r=%d", inst.m, inst.q, inst.n, inst.r)
    G = embed(inst, args.seed, enforce_bound=not args.allow_below_bound)
    _write(args.out, dumps(G.to_json()))
    return _finish(verify_embedding(inst.coloring, G, "full", inst.r), args.certificate)


def cmd_embed_restricted(args) -> int:
    inst = PiecesInstance.from_json(_read_json(args.input), n=args.n, r=args.r)
    log.info("embedding %d pieces on %d vertices into K_%d^3, r=%d", inst.pieces.num_edges(), inst.m, inst.n, inst.r)
    G = embed_restricted(inst, args.seed)
    _write(args.out, dumps(G.to_json()))
    return _finish(verify_embedding(inst.pieces, G, "restricted", inst.r), args.certificate)


def cmd_gen_factorization(args) -> int:
    G = generate_r_factorization(args.m, args.r, args.seed)
    _write(args.out, dumps(G.to_json()))
    return _finish(verify_factorization(G, args.r), args.certificate)


def cmd_counterexample(args) -> int:
    inst = counterexample(args.m, args.seed)
    report = check_conditions(inst)
    witness = infeasibility_witness(inst)
    log.info("m=%d n=%d r=%d q=%d: conditions %s, %s", inst.m, inst.n, inst.r, inst.q,
             "hold" if report.conditions_hold else "fail", witness.reason)
    _write(args.out, dumps(inst.to_json()))
    if args.witness:
        _write(args.witness, dumps({"conditions": report.to_json(), "witness": witness.to_json()}))
    return 0


def cmd_detach(args) -> int:
    F = Hypergraph.from_json(_read_json(args.input))
    g = {int(x): int(v) for x, v in _read_json(args.g).items()}
    result = detach(F, g, args.seed)
    _write(args.out, result.dumps())
    return _finish(verify_detachment(F, result.detached, result.psi, g), args.certificate)


def cmd_verify(args) -> int:
    data = _read_json(args.result)
    if args.kind == "factorization":
        cert = verify_factorization(Hypergraph.from_json(data), args.r)
    else:
        if not args.original:
            raise UsageError(f"--original is required for --kind {args.kind}")
        original = Hypergraph.from_json(_read_json(args.original))
        if args.kind == "detachment":
            if "psi" not in data:
                raise UsageError("detachment result has no psi map")
            res = DetachmentResult.from_json(data)
            cert = verify_detachment(original, res.detached, res.psi)
        else:
            mode = args.kind.split("-", 1)[1]
            cert = verify_embedding(original, Hypergraph.from_json(data), mode, args.r)
    status = _finish(cert, args.certificate)
    log.info("%s certificate: %s", args.kind, "pass" if status == 0 else "FAIL")
    return status


# -- scan ----------------------------------------------------------------


_LINEAR = re.compile(r"^(\d*)m([+-]\d+)?$")


def _endpoint(token: str, m: int) -> int:
    token = token.strip().replace(" ", "")
    if token == "bound":
        return bound_min_n(m) if m >= 4 else 3 * m
    if token.lstrip("-").isdigit():
        return int(token)
    match = _LINEAR.match(token)
    if not match:
        raise UsageError(f"cannot parse range endpoint {token!r}")
    return int(match.group(1) or 1) * m + int(match.group(2) or 0)


def parse_range(text: str, m: int = 0) -> list:
    """``"4..7"``, ``"3,5,9"``, ``"12"``; n endpoints may use ``m`` and ``bound``."""
    out = []
    for part in text.split(","):
        if not part.strip():
            continue
        if ".." in part:
            lo, hi = part.split("..", 1)
            out.extend(range(_endpoint(lo, m), _endpoint(hi, m) + 1))
        else:
            out.append(_endpoint(part, m))
    return sorted(set(out))


def scan_input(m: int, r: int, seed: int):
    """The coloring scanned for (m, r): an r-factorization when one exists, else a rainbow K_m^3."""
    if factorization_exists(m, r):
        return "factorization", generate_r_factorization(m, r, seed)
    triples = list(combinations(range(m), 3))
    return "rainbow", Hypergraph(range(m), {(t, i + 1): 1 for i, t in enumerate(triples)})


def scan_one(task) -> dict:
    m, n, r, seed, timing = task
    start = time.perf_counter()
    kind, coloring = scan_input(m, r, seed)
    inst = EmbeddingInstance(m, n, r, coloring)
    rep = check_conditions(inst)
    row = {"m": m, "n": n, "r": r, "input": kind, "q": inst.q, "k": rep.k if rep.k is not None else ""}
    for name in ("i", "ii", "iii", "iv", "bound"):
        row[name] = "pass" if rep.checks.get(name) else "fail"
    wit = infeasibility_witness(inst)
    row["witness"] = (f"infeasible {wit.required}>{wit.available}" if wit.infeasible else "none") if wit.applicable else "n/a"
    row["verify"] = ""
    if not (rep.conditions_hold and rep.checks.get("colors-in-range")):
        row["outcome"] = "ineligible"
    else:
        try:
            G = embed(inst, seed, enforce_bound=False)
        except UnsupportedInstanceError as exc:
            row["outcome"] = exc.reason
        except HyperembedError as exc:
            row["outcome"] = f"error: {type(exc).__name__}"
        else:
            row["outcome"] = "success"
            row["verify"] = "pass" if verify_embedding(coloring, G, "full", r).overall else "fail"
    row["seconds"] = f"{time.perf_counter() - start:.3f}" if timing else ""
    return row


def scan(m_values, n_spec, r_values, seed=0, threads=1, timing=True, max_triples=DEFAULT_MAX_TRIPLES, force=False) -> str:
    """CSV report over every (m, n, r); n ranges may depend on m."""
    tasks = []
    for m in m_values:
        for n in parse_range(n_spec, m):
            if n <= m:
                continue
            if comb(n, 3) > max_triples and not force:
                raise UsageError(f"K_{n}^3 has {comb(n, 3)} triples, above the cap of {max_triples}; pass --force to override")
            for r in r_values:
                tasks.append((m, n, r, derive_seed(seed, len(tasks)), timing))
    if threads > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(scan_one, tasks))
    else:
        rows = []
        for task in tasks:
            rows.append(scan_one(task))
            log.info("scan m=%d n=%d r=%d: %s", task[0], task[1], task[2], rows[-1]["outcome"])
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=SCAN_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def cmd_scan(args) -> int:
    m_values = parse_range(args.m)
    r_values = parse_range(args.r)
    threads = args.threads if args.threads is not None else int(os.environ.get("HYPEREMBED_THREADS", "1"))
    text = scan(m_values, args.n, r_values, args.seed, threads, not args.no_timing, args.max_triples, args.force)
    _write(args.out, text)
    return 0


# -- entry point ---------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperembed", description="Embed colored K_m^3 into r-factorizations of K_n^3.")
    parser.add_argument("--quiet", action="store_true", help="suppress progress messages")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, out_required=True):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", required=out_required, help="output JSON path ('-' for stdout)")

    p = sub.add_parser("embed", help="embed a colored K_m^3 (full mode)")
    p.add_argument("--input", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--certificate")
    p.add_argument("--allow-below-bound", action="store_true", help="attempt the construction below the guaranteed range of n")
    common(p)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("embed-restricted", help="embed a colored K_m^3 with prescribed pieces")
    p.add_argument("--input", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--certificate")
    common(p)
    p.set_defaults(func=cmd_embed_restricted)

    p = sub.add_parser("gen-factorization", help="generate an r-factorization of K_m^3")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--certificate")
    common(p)
    p.set_defaults(func=cmd_gen_factorization)

    p = sub.add_parser("counterexample", help="instance with n = 2m-1 meeting all conditions but not embeddable")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--witness", help="write the condition report and counting witness here")
    common(p)
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("detach", help="fair 3-uniform detachment of a colored hypergraph")
    p.add_argument("--input", required=True)
    p.add_argument("--g", required=True, help="JSON object mapping vertex id to fiber size")
    p.add_argument("--certificate")
    common(p)
    p.set_defaults(func=cmd_detach)

    p = sub.add_parser("verify", help="check an artifact; exit 0 iff every check passes")
    p.add_argument("--kind", required=True, choices=KINDS)
    p.add_argument("--original")
    p.add_argument("--result", required=True)
    p.add_argument("--r", type=int, help="factor degree (inferred when omitted)")
    p.add_argument("--certificate")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", help="CSV survey of (m, n, r) instances")
    p.add_argument("--m", required=True, help="range such as 4..7")
    p.add_argument("--n", default="2m-1..bound", help="range; endpoints may use m and 'bound'")
    p.add_argument("--r", default="1..9")
    p.add_argument("--threads", type=int, default=None, help="worker processes (env HYPEREMBED_THREADS)")
    p.add_argument("--max-triples", type=int, default=DEFAULT_MAX_TRIPLES)
    p.add_argument("--force", action="store_true", help="ignore the size cap")
    p.add_argument("--no-timing", action="store_true", help="leave the seconds column empty")
    common(p, out_required=False)
    p.set_defaults(func=cmd_scan)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO, format="%(levelname)s: %(message)s", stream=sys.stderr)
    log.setLevel(logging.WARNING if args.quiet else logging.INFO)
    try:
        return args.func(args)
    except UsageError as exc:
        log.error("%s", exc)
        return 2
    except InvalidHypergraphError as exc:
        log.error("invalid input: %s", exc)
        return 2
    except (IneligibleInstanceError, PreconditionError, UnsupportedInstanceError) as exc:
        log.error("%s", exc)
        for v in getattr(exc, "violations", []):
            log.error("  %s", v)
        return 1


if __name__ == "__main__":
    sys.exit(main())
