"""HTTP annotation service: serve random unseen tweets, collect votes.

Endpoints:
    GET  /api/tweet/random?session=S  -> {"id", "text"} | 410 when exhausted
    POST /api/annotation              -> 201, body {"session","tweet_id","vote"}
    GET  /api/stats                   -> {"total", "votes": {...}}
    GET  /healthz                     -> 200 "ok"
    GET  /...                         -> static UI files when configured

Votes append to annotations.jsonl, one JSON object per line, serialized
through a single lock so concurrent posts never interleave. Each session
(an opaque client-chosen id) is served any tweet at most once.
"""

from __future__ import annotations

import json
import random
import threading
from collections import Counter
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlparse

from .corpus import Tweet, load_annotations
from .errors import Exhausted, MalformedVote, UnknownTweetId
from .labels import is_valid_vote
from .utcnow import now_ms


class AnnotationService:
    """State and operations behind the HTTP layer; usable directly."""

    def __init__(self, pool: list[Tweet], annotations_path, seed: int | None = None, ui_dir=None):
        self.pool = list(pool)
        self.by_id = {t.id: t for t in self.pool}
        self.annotations_path = Path(annotations_path)
        self.ui_dir = Path(ui_dir) if ui_dir else None
        self._rng = random.Random(seed)
        self._served: dict[str, set[str]] = {}
        self._session_lock = threading.Lock()
        self._write_lock = threading.Lock()
        self._counts = Counter()
        if self.annotations_path.exists():
            for ann in load_annotations(self.annotations_path):
                self._counts[ann.vote] += 1

    # --- operations ---

    def get_random_tweet(self, session_id: str) -> Tweet:
        """Uniform over the tweets this session has not seen; records the
        serve atomically so no session ever gets a duplicate."""
        with self._session_lock:
            seen = self._served.setdefault(session_id, set())
            candidates = [t for t in self.pool if t.id not in seen]
            if not candidates:
                raise Exhausted(f"session {session_id!r} has seen all {len(self.pool)} tweets")
            tweet = self._rng.choice(candidates)
            seen.add(tweet.id)
            return tweet

    def post_annotation(self, session_id: str, tweet_id: str, vote: str) -> dict:
        if not is_valid_vote(vote):
            raise MalformedVote(f"invalid vote {vote!r}")
        if tweet_id not in self.by_id:
            raise UnknownTweetId(tweet_id)
        record = {
            "tweet_id": tweet_id,
            "session_id": session_id,
            "timestamp_ms": now_ms(),
            "vote": vote,
        }
        line = json.dumps(record, ensure_ascii=False) + "\n"
        with self._write_lock:
            self.annotations_path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.annotations_path, "a", encoding="utf-8") as fh:
                fh.write(line)
                fh.flush()
            self._counts[vote] += 1
        return record

    def get_stats(self) -> dict:
        with self._write_lock:
            votes = dict(sorted(self._counts.items()))
        return {"total": sum(votes.values()), "votes": votes}


def make_handler(service: AnnotationService):
    class Handler(BaseHTTPRequestHandler):
        protocol_version = "HTTP/1.1"

        def log_message(self, fmt, *args):  # silence request logging
            pass

        def _send_json(self, status: int, obj: dict) -> None:
            body = json.dumps(obj, ensure_ascii=False).encode("utf-8")
            self.send_response(status)
            self.send_header("Content-Type", "application/json; charset=utf-8")
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)

        def do_GET(self):
            url = urlparse(self.path)
            if url.path == "/healthz":
                body = b"ok"
                self.send_response(200)
                self.send_header("Content-Type", "text/plain")
                self.send_header("Content-Length", str(len(body)))
                self.end_headers()
                self.wfile.write(body)
                return
            if url.path == "/api/tweet/random":
                params = parse_qs(url.query)
                session = params.get("session", [""])[0]
                if not session:
                    self._send_json(400, {"error": "missing session parameter"})
                    return
                try:
                    tweet = service.get_random_tweet(session)
                except Exhausted as exc:
                    self._send_json(410, {"error": str(exc)})
                    return
                self._send_json(200, {"id": tweet.id, "text": tweet.text})
                return
            if url.path == "/api/stats":
                self._send_json(200, service.get_stats())
                return
            self._serve_static(url.path)

        def do_POST(self):
            url = urlparse(self.path)
            if url.path != "/api/annotation":
                self._send_json(404, {"error": "not found"})
                return
            try:
                length = int(self.headers.get("Content-Length", "0"))
                payload = json.loads(self.rfile.read(length) or b"{}")
                session = payload["session"]
                tweet_id = payload["tweet_id"]
                vote = payload["vote"]
            except (ValueError, KeyError):
                self._send_json(400, {"error": "body must be JSON with session, tweet_id, vote"})
                return
            try:
                record = service.post_annotation(session, tweet_id, vote)
            except MalformedVote as exc:
                self._send_json(400, {"error": str(exc)})
                return
            except UnknownTweetId as exc:
                self._send_json(404, {"error": str(exc)})
                return
            self._send_json(201, {"ok": True, "timestamp_ms": record["timestamp_ms"]})

        def _serve_static(self, path: str) -> None:
            if service.ui_dir is None:
                if path == "/":
                    body = b"<!doctype html><title>humorkit</title><p>No UI bundle configured.</p>"
                    self.send_response(200)
                    self.send_header("Content-Type", "text/html; charset=utf-8")
                    self.send_header("Content-Length", str(len(body)))
                    self.end_headers()
                    self.wfile.write(body)
                    return
                self._send_json(404, {"error": "not found"})
                return
            name = path.lstrip("/") or "index.html"
            target = (service.ui_dir / name).resolve()
            root = service.ui_dir.resolve()
            if root not in target.parents and target != root:
                self._send_json(404, {"error": "not found"})
                return
            if not target.is_file():
                self._send_json(404, {"error": "not found"})
                return
            ctype = {
                ".html": "text/html; charset=utf-8",
                ".js": "text/javascript; charset=utf-8",
                ".css": "text/css; charset=utf-8",
                ".json": "application/json",
                ".svg": "image/svg+xml",
            }.get(target.suffix, "application/octet-stream")
            body = target.read_bytes()
            self.send_response(200)
            self.send_header("Content-Type", ctype)
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)

    return Handler


class ServiceServer:
    """Threaded HTTP server wrapper with clean startup/shutdown for tests."""

    def __init__(self, service: AnnotationService, host: str = "127.0.0.1", port: int = 0):
        self.httpd = ThreadingHTTPServer((host, port), make_handler(service))
        self.thread: threading.Thread | None = None

    @property
    def address(self) -> str:
        host, port = self.httpd.server_address[:2]
        return f"http://{host}:{port}"

    def start(self) -> "ServiceServer":
        self.thread = threading.Thread(target=self.httpd.serve_forever, daemon=True)
        self.thread.start()
        return self

    def stop(self) -> None:
        self.httpd.shutdown()
        self.httpd.server_close()
        if self.thread:
            self.thread.join(timeout=5)


def create_server(service: AnnotationService, host: str, port: int) -> ThreadingHTTPServer:
    """Bind immediately (port 0 picks an ephemeral one); run with `run`."""
    return ThreadingHTTPServer((host, port), make_handler(service))


def run(server: ThreadingHTTPServer) -> None:
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()


def serve_forever(service: AnnotationService, host: str, port: int) -> None:
    run(create_server(service, host, port))
