"""Client for out-of-process scorers speaking newline-delimited JSON.

The scorer is either a spawned subprocess (scores on stdin/stdout) or an
already-running TCP service given as ``host:port``. Either way the first
line must come from the scorer and carry the hash of the vocabulary it was
built against:

    {"vocab_hash": "<sha256 hex>"}

A mismatch with the client's vocabulary aborts immediately; silently mixing
token tables would score garbage. After the handshake the client sends one
request per line and waits for the matching reply:

    -> {"id": 7, "input": "...", "prefix": [5, 9], "allowed": [-1, 12, 40]}
    <- {"id": 7, "logprobs": {"-1": -0.3, "12": -2.1, "40": -1.7}}

The END_TITLE pseudo-token travels as -1. Replies missing an allowed id are
protocol errors; extra ids are dropped by the normalization step. A reply
that takes longer than the deadline raises ScorerTimeout.

Connections hold per-request state, so instances are not shareable across
worker threads; the runner builds one per worker.
"""

from __future__ import annotations

import json
import os
import queue
import re
import shlex
import socket
import subprocess
import sys
import threading
from typing import Mapping, Sequence

from .decode import Scorer
from .errors import ScorerProtocolError, ScorerTimeout
from .ioutil import dumps_compact

_TCP_TARGET_RE = re.compile(r"^([\w.\-]+):(\d+)$")

_CLOSED = object()  # reader-thread sentinel for end of stream


class ExternalScorer(Scorer):
    shareable = False

    def __init__(
        self,
        target: str,
        vocab_sha256: str,
        timeout: float = 10.0,
        env: Mapping[str, str] | None = None,
    ):
        self.timeout = timeout
        self._next_id = 0
        self._lines: queue.Queue = queue.Queue()
        self._proc: subprocess.Popen | None = None
        self._sock: socket.socket | None = None
        self._closed = False

        match = _TCP_TARGET_RE.match(target)
        if match:
            self._sock = socket.create_connection(
                (match.group(1), int(match.group(2))), timeout=timeout
            )
            reader = self._sock.makefile("r", encoding="utf-8")
            self._write = self._write_socket
        else:
            argv = shlex.split(target)
            if not argv:
                raise ScorerProtocolError("empty scorer command")
            spawn_env = dict(os.environ)
            if env:
                spawn_env.update(env)
            self._proc = subprocess.Popen(
                argv,
                stdin=subprocess.PIPE,
                stdout=subprocess.PIPE,
                stderr=sys.stderr,
                text=True,
                bufsize=1,
                env=spawn_env,
            )
            reader = self._proc.stdout
            self._write = self._write_pipe

        self._reader = threading.Thread(target=self._pump, args=(reader,), daemon=True)
        self._reader.start()
        try:
            self._handshake(vocab_sha256)
        except Exception:
            self.close()
            raise

    def _pump(self, reader) -> None:
        try:
            for line in reader:
                self._lines.put(line)
        except (OSError, ValueError):
            pass
        self._lines.put(_CLOSED)

    def _write_pipe(self, line: str) -> None:
        try:
            self._proc.stdin.write(line)
            self._proc.stdin.flush()
        except (OSError, ValueError) as exc:
            raise ScorerProtocolError(f"scorer process not accepting input: {exc}") from exc

    def _write_socket(self, line: str) -> None:
        try:
            self._sock.sendall(line.encode("utf-8"))
        except OSError as exc:
            raise ScorerProtocolError(f"scorer connection lost: {exc}") from exc

    def _read_message(self) -> dict:
        try:
            line = self._lines.get(timeout=self.timeout)
        except queue.Empty:
            raise ScorerTimeout(f"no reply from scorer within {self.timeout}s") from None
        if line is _CLOSED:
            raise ScorerProtocolError("scorer closed the stream")
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ScorerProtocolError(f"scorer sent invalid JSON: {line!r}") from exc
        if not isinstance(obj, dict):
            raise ScorerProtocolError(f"scorer sent a non-object message: {line!r}")
        return obj

    def _handshake(self, expected_hash: str) -> None:
        greeting = self._read_message()
        got = greeting.get("vocab_hash")
        if not isinstance(got, str):
            raise ScorerProtocolError("scorer handshake missing vocab_hash")
        if got != expected_hash:
            raise ScorerProtocolError(
                f"vocabulary mismatch: scorer built against {got[:12]}..., "
                f"client uses {expected_hash[:12]}..."
            )

    def raw_scores(self, input_text: str, prefix: Sequence[int], allowed: Sequence[int]):
        if self._closed:
            raise ScorerProtocolError("scorer already closed")
        self._next_id += 1
        req_id = self._next_id
        request = {
            "id": req_id,
            "input": input_text,
            "prefix": list(prefix),
            "allowed": list(allowed),
        }
        self._write(dumps_compact(request) + "\n")
        reply = self._read_message()
        if reply.get("id") != req_id:
            raise ScorerProtocolError(
                f"scorer replied to request {reply.get('id')!r}, expected {req_id}"
            )
        logprobs = reply.get("logprobs")
        if not isinstance(logprobs, dict):
            raise ScorerProtocolError("scorer reply missing logprobs object")
        out: dict[int, float] = {}
        for key, value in logprobs.items():
            try:
                out[int(key)] = float(value)
            except (TypeError, ValueError) as exc:
                raise ScorerProtocolError(f"bad logprob entry {key!r}: {value!r}") from exc
        return out

    def close(self) -> None:
        if self._closed:
            return
        self._closed = True
        if self._sock is not None:
            try:
                self._sock.close()
            except OSError:
                pass
        if self._proc is not None:
            try:
                if self._proc.stdin:
                    self._proc.stdin.close()
            except (OSError, ValueError):
                pass
            try:
                self._proc.wait(timeout=2.0)
            except subprocess.TimeoutExpired:
                self._proc.kill()
                self._proc.wait()
