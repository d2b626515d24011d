import json
import threading
import urllib.error
import urllib.request

import pytest

from humorkit.corpus import AccountKind, Tweet, load_annotations
from humorkit.errors import Exhausted, MalformedVote, UnknownTweetId
from humorkit.service import AnnotationService, ServiceServer


def make_pool(n=3):
    return [
        Tweet(id=f"t{i}", text=f"texto {i}", account="chistes", account_kind=AccountKind.HUMOROUS)
        for i in range(n)
    ]


@pytest.fixture
def service(tmp_path):
    return AnnotationService(make_pool(), tmp_path / "annotations.jsonl", seed=1)


class TestServiceUnit:
    def test_fresh_session_gets_pool_tweet(self, service):
        tweet = service.get_random_tweet("s1")
        assert tweet.id in {"t0", "t1", "t2"}

    def test_exhaustion_after_pool_size_serves(self, service):
        seen = {service.get_random_tweet("s1").id for _ in range(3)}
        assert seen == {"t0", "t1", "t2"}  # no duplicates either
        with pytest.raises(Exhausted):
            service.get_random_tweet("s1")

    def test_sessions_are_independent(self, service):
        for _ in range(3):
            service.get_random_tweet("s1")
        assert service.get_random_tweet("s2").id in {"t0", "t1", "t2"}

    def test_uniformity_over_fresh_sessions(self, tmp_path):
        service = AnnotationService(make_pool(2), tmp_path / "a.jsonl", seed=7)
        counts = {"t0": 0, "t1": 0}
        for i in range(1000):
            counts[service.get_random_tweet(f"s{i}").id] += 1
        assert 0.4 <= counts["t0"] / 1000 <= 0.6

    def test_post_appends_wellformed_line(self, service, tmp_path):
        service.post_annotation("s1", "t0", "star3")
        anns = load_annotations(tmp_path / "annotations.jsonl")
        assert len(anns) == 1
        assert anns[0].vote == "star3"
        assert anns[0].tweet_id == "t0"

    def test_unknown_tweet_rejected_file_unchanged(self, service, tmp_path):
        with pytest.raises(UnknownTweetId):
            service.post_annotation("s1", "ghost", "star3")
        assert not (tmp_path / "annotations.jsonl").exists()

    def test_malformed_vote_rejected(self, service):
        with pytest.raises(MalformedVote):
            service.post_annotation("s1", "t0", "star9")

    def test_stats_match_file(self, service, tmp_path):
        service.post_annotation("s1", "t0", "star5")
        service.post_annotation("s2", "t1", "skip")
        stats = service.get_stats()
        assert stats == {"total": 2, "votes": {"skip": 1, "star5": 1}}
        from humorkit.corpus import annotation_histogram

        cats, _ = annotation_histogram(load_annotations(tmp_path / "annotations.jsonl"))
        assert cats == stats["votes"]

    def test_stats_pick_up_existing_file(self, tmp_path):
        first = AnnotationService(make_pool(), tmp_path / "a.jsonl", seed=1)
        first.post_annotation("s1", "t0", "star2")
        second = AnnotationService(make_pool(), tmp_path / "a.jsonl", seed=2)
        assert second.get_stats()["total"] == 1


def http_get(url):
    try:
        with urllib.request.urlopen(url, timeout=10) as resp:
            return resp.status, json.loads(resp.read() or b"{}")
    except urllib.error.HTTPError as err:
        return err.code, json.loads(err.read() or b"{}")


def http_post(url, payload):
    data = json.dumps(payload).encode()
    req = urllib.request.Request(url, data=data, headers={"Content-Type": "application/json"})
    try:
        with urllib.request.urlopen(req, timeout=10) as resp:
            return resp.status, json.loads(resp.read() or b"{}")
    except urllib.error.HTTPError as err:
        return err.code, json.loads(err.read() or b"{}")


@pytest.fixture
def server(tmp_path):
    service = AnnotationService(make_pool(50), tmp_path / "annotations.jsonl", seed=3)
    srv = ServiceServer(service, port=0).start()
    yield srv, tmp_path / "annotations.jsonl"
    srv.stop()


class TestHttp:
    def test_healthz(self, server):
        srv, _ = server
        with urllib.request.urlopen(srv.address + "/healthz", timeout=10) as resp:
            assert resp.status == 200

    def test_random_tweet_and_vote_flow(self, server):
        srv, path = server
        status, tweet = http_get(srv.address + "/api/tweet/random?session=s1")
        assert status == 200 and set(tweet) == {"id", "text"}
        status, body = http_post(
            srv.address + "/api/annotation",
            {"session": "s1", "tweet_id": tweet["id"], "vote": "star4"},
        )
        assert status == 201
        anns = load_annotations(path)
        assert len(anns) == 1 and anns[0].vote == "star4"

    def test_missing_session_param(self, server):
        srv, _ = server
        status, _ = http_get(srv.address + "/api/tweet/random")
        assert status == 400

    def test_exhausted_gives_410(self, tmp_path):
        service = AnnotationService(make_pool(2), tmp_path / "a.jsonl", seed=5)
        srv = ServiceServer(service, port=0).start()
        try:
            for _ in range(2):
                assert http_get(srv.address + "/api/tweet/random?session=sx")[0] == 200
            assert http_get(srv.address + "/api/tweet/random?session=sx")[0] == 410
        finally:
            srv.stop()

    def test_unknown_tweet_404(self, server):
        srv, path = server
        status, _ = http_post(
            srv.address + "/api/annotation", {"session": "s1", "tweet_id": "nope", "vote": "star1"}
        )
        assert status == 404
        assert not path.exists()

    def test_malformed_vote_400(self, server):
        srv, _ = server
        status, _ = http_post(
            srv.address + "/api/annotation", {"session": "s1", "tweet_id": "t0", "vote": "star6"}
        )
        assert status == 400

    def test_stats_endpoint(self, server):
        srv, _ = server
        http_post(srv.address + "/api/annotation", {"session": "s1", "tweet_id": "t0", "vote": "skip"})
        status, stats = http_get(srv.address + "/api/stats")
        assert status == 200
        assert stats["total"] == 1 and stats["votes"] == {"skip": 1}

    def test_hundred_concurrent_posts_intact(self, server):
        srv, path = server
        errors = []

        def post(i):
            status, _ = http_post(
                srv.address + "/api/annotation",
                {"session": f"s{i}", "tweet_id": f"t{i % 50}", "vote": "star3"},
            )
            if status != 201:
                errors.append(status)

        threads = [threading.Thread(target=post, args=(i,)) for i in range(100)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert not errors
        lines = path.read_text(encoding="utf-8").splitlines()
        assert len(lines) == 100
        for line in lines:
            record = json.loads(line)  # every line parses cleanly
            assert record["vote"] == "star3"

    def test_no_duplicate_serves_per_session(self, server):
        srv, _ = server
        seen = []
        for _ in range(50):
            status, tweet = http_get(srv.address + "/api/tweet/random?session=dup")
            assert status == 200
            seen.append(tweet["id"])
        assert len(set(seen)) == 50

    def test_static_placeholder_without_ui(self, server):
        srv, _ = server
        with urllib.request.urlopen(srv.address + "/", timeout=10) as resp:
            assert resp.status == 200

    def test_static_ui_dir(self, tmp_path):
        ui = tmp_path / "ui"
        ui.mkdir()
        (ui / "index.html").write_text("<html>annotator</html>")
        (ui / "app.js").write_text("console.log(1)")
        service = AnnotationService(make_pool(), tmp_path / "a.jsonl", ui_dir=ui)
        srv = ServiceServer(service, port=0).start()
        try:
            with urllib.request.urlopen(srv.address + "/", timeout=10) as resp:
                assert b"annotator" in resp.read()
            with urllib.request.urlopen(srv.address + "/app.js", timeout=10) as resp:
                assert resp.headers["Content-Type"].startswith("text/javascript")
            status, _ = http_get(srv.address + "/../secrets")
            assert status == 404
        finally:
            srv.stop()
