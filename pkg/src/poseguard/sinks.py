"""Event sinks: stdout, file, or a TCP endpoint.

publish() serializes an event to one newline-terminated JSON line and
delivers it with up to 3 attempts and a short backoff between them;
exhausted retries raise SinkError so the caller can drop the event
without tearing down the pipeline. A lock serializes concurrent
publishes so interleaved streams never split a line.
"""

from __future__ import annotations

import socket
import sys
import threading
import time

from .errors import SinkError
from .events import Event, serialize_event

_ATTEMPTS = 3


class Sink:
    """Base sink: retry/ordering policy around a concrete _deliver."""

    def __init__(self, retry_delays: tuple[float, ...] = (0.05, 0.1)):
        self._lock = threading.Lock()
        self._retry_delays = retry_delays

    def publish(self, event: Event) -> None:
        line = serialize_event(event) + "\n"
        with self._lock:
            last: Exception | None = None
            for attempt in range(_ATTEMPTS):
                try:
                    self._deliver(line)
                    return
                except OSError as exc:
                    last = exc
                    if attempt + 1 < _ATTEMPTS:
                        time.sleep(self._retry_delays[min(attempt, len(self._retry_delays) - 1)])
            raise SinkError(f"delivery failed after {_ATTEMPTS} attempts: {last}")

    def _deliver(self, line: str) -> None:
        raise NotImplementedError

    def close(self) -> None:
        pass

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()
        return False


class StdoutSink(Sink):
    def _deliver(self, line: str) -> None:
        sys.stdout.write(line)
        sys.stdout.flush()


class FileSink(Sink):
    def __init__(self, path: str, **kw):
        super().__init__(**kw)
        self._fh = open(path, "w", encoding="utf-8", newline="")

    def _deliver(self, line: str) -> None:
        self._fh.write(line)
        self._fh.flush()

    def close(self) -> None:
        self._fh.close()


class TcpSink(Sink):
    """Connects lazily and reconnects on the next attempt after a send fails."""

    def __init__(self, host: str, port: int, connect_timeout: float = 2.0, **kw):
        super().__init__(**kw)
        self.host = host
        self.port = port
        self._timeout = connect_timeout
        self._sock: socket.socket | None = None

    def _deliver(self, line: str) -> None:
        if self._sock is None:
            self._sock = socket.create_connection((self.host, self.port), timeout=self._timeout)
        try:
            self._sock.sendall(line.encode("utf-8"))
        except OSError:
            self.close()
            raise

    def close(self) -> None:
        if self._sock is not None:
            try:
                self._sock.close()
            finally:
                self._sock = None


class CollectSink(Sink):
    """In-memory sink; keeps lines for assertions and tooling."""

    def __init__(self, **kw):
        super().__init__(**kw)
        self.lines: list[str] = []

    def _deliver(self, line: str) -> None:
        self.lines.append(line)


def make_sink(descriptor: str, **kw) -> Sink:
    """Build a sink from "stdout", "file:PATH", or "tcp:HOST:PORT"."""
    if descriptor == "stdout":
        return StdoutSink(**kw)
    if descriptor.startswith("file:"):
        return FileSink(descriptor[len("file:") :], **kw)
    if descriptor.startswith("tcp:"):
        rest = descriptor[len("tcp:") :]
        host, sep, port = rest.rpartition(":")
        if not sep or not host:
            raise SinkError(f"bad tcp sink descriptor {descriptor!r}; want tcp:HOST:PORT")
        try:
            return TcpSink(host, int(port), **kw)
        except ValueError:
            raise SinkError(f"bad tcp port in sink descriptor {descriptor!r}") from None
    raise SinkError(f"unknown sink descriptor {descriptor!r}")
