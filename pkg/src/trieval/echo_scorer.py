"""Reference external scorer: uniform scores over whatever is allowed.

Speaks the newline-delimited JSON protocol understood by ExternalScorer,
either on stdin/stdout (default) or as a TCP service with ``--tcp PORT``.
Exists so the wire path can be exercised without a real model:

    python -m trieval.echo_scorer --vocab vocab.txt

``--vocab-hash`` overrides the advertised hash (to provoke the client's
mismatch abort) and ``--delay`` stalls each reply (to provoke timeouts).
"""

from __future__ import annotations

import argparse
import io
import json
import socketserver
import sys
import time


def _advertised_hash(args: argparse.Namespace) -> str:
    if args.vocab_hash:
        return args.vocab_hash
    if args.vocab:
        from .index import load_vocabulary

        return load_vocabulary(args.vocab).sha256
    raise SystemExit("echo_scorer: need --vocab or --vocab-hash")


def serve_stream(rfile, wfile, vocab_hash: str, delay: float = 0.0) -> None:
    wfile.write(json.dumps({"vocab_hash": vocab_hash}) + "\n")
    wfile.flush()
    for line in rfile:
        if not line.strip():
            continue
        request = json.loads(line)
        if delay:
            time.sleep(delay)
        logprobs = {str(tid): 0.0 for tid in request["allowed"]}
        wfile.write(json.dumps({"id": request["id"], "logprobs": logprobs}) + "\n")
        wfile.flush()


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="trieval-echo-scorer", description=__doc__)
    parser.add_argument("--vocab", help="vocabulary file whose hash to advertise")
    parser.add_argument("--vocab-hash", help="advertise this hash instead of hashing --vocab")
    parser.add_argument("--tcp", type=int, metavar="PORT", help="serve on TCP instead of stdio")
    parser.add_argument("--delay", type=float, default=0.0, help="seconds to stall each reply")
    args = parser.parse_args(argv)
    vocab_hash = _advertised_hash(args)

    if args.tcp is None:
        serve_stream(sys.stdin, sys.stdout, vocab_hash, args.delay)
        return 0

    class Handler(socketserver.StreamRequestHandler):
        def handle(self):
            reader = io.TextIOWrapper(self.rfile, encoding="utf-8")
            writer = io.TextIOWrapper(self.wfile, encoding="utf-8", write_through=True)
            try:
                serve_stream(reader, writer, vocab_hash, args.delay)
            except (BrokenPipeError, ConnectionResetError):
                pass

    with socketserver.ThreadingTCPServer(("127.0.0.1", args.tcp), Handler) as server:
        server.daemon_threads = True
        print(f"listening on 127.0.0.1:{server.server_address[1]}", file=sys.stderr)
        server.serve_forever()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
