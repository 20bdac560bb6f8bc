from __future__ import annotations

import json
import threading
import time
import urllib.error
import urllib.request

import pytest

from adq.formats import fixtures_dir
from adq.server import DebugService, SessionStore, create_server


@pytest.fixture(scope="module")
def base_url():
    httpd = create_server(host="127.0.0.1", port=0)
    thread = threading.Thread(target=httpd.serve_forever, daemon=True)
    thread.start()
    host, port = httpd.server_address[:2]
    yield f"http://{host}:{port}"
    httpd.shutdown()
    httpd.server_close()


def request(base: str, method: str, path: str, body: dict | None = None):
    data = json.dumps(body).encode() if body is not None else None
    req = urllib.request.Request(
        base + path, data=data, method=method,
        headers={"Content-Type": "application/json"} if data else {},
    )
    try:
        with urllib.request.urlopen(req) as resp:
            raw = resp.read()
            return resp.status, json.loads(raw) if raw else None
    except urllib.error.HTTPError as exc:
        return exc.code, json.loads(exc.read())


def figure4_doc() -> dict:
    return json.loads((fixtures_dir() / "figure4.json").read_text())


def test_healthz(base_url):
    status, payload = request(base_url, "GET", "/healthz")
    assert status == 200
    assert payload == {"status": "ok"}


def test_create_session_first_question(base_url):
    status, payload = request(base_url, "POST", "/sessions",
                              {"et": figure4_doc(), "strategy": "dqo"})
    assert status == 200
    assert payload["question"] == {"id": 1, "label": "w4"}
    assert payload["question_number"] == 1


def test_create_session_rejects_bad_document(base_url):
    status, payload = request(base_url, "POST", "/sessions",
                              {"et": {"root": 0, "nodes": []}, "strategy": "dqo"})
    assert status == 400
    assert "nodes" in payload["error"]


def test_create_session_rejects_bad_strategy(base_url):
    status, payload = request(base_url, "POST", "/sessions",
                              {"et": figure4_doc(), "strategy": "bogus"})
    assert status == 400
    assert "unknown strategy" in payload["error"]


def test_single_node_session(base_url):
    doc = {"name": "solo", "root": 0, "nodes": [{"id": 0, "label": "only", "children": []}]}
    status, payload = request(base_url, "POST", "/sessions", {"et": doc, "strategy": "dqo"})
    assert status == 200
    assert payload["question"]["id"] == 0


def test_full_session_wrong_wrong_correct(base_url):
    _, created = request(base_url, "POST", "/sessions",
                         {"et": figure4_doc(), "strategy": "dqo"})
    sid = created["session"]

    status, snap = request(base_url, "GET", f"/sessions/{sid}/tree")
    assert status == 200
    assert snap["node_count"] == 5
    assert snap["root"]["w"] == 5.0
    assert _count(snap["root"]) == 5
    assert _pending_count(snap["root"]) == 1

    status, step = request(base_url, "POST", f"/sessions/{sid}/answers", {"answer": "wrong"})
    assert status == 200 and not step["finished"]
    _, snap = request(base_url, "GET", f"/sessions/{sid}/tree")
    assert snap["node_count"] == 4
    assert snap["root"]["marking"] == "wrong"

    status, step = request(base_url, "POST", f"/sessions/{sid}/answers", {"answer": "wrong"})
    assert status == 200 and not step["finished"]
    status, step = request(base_url, "POST", f"/sessions/{sid}/answers", {"answer": "correct"})
    assert status == 200 and step["finished"]
    report = step["report"]
    assert report["buggy_label"] == "w2"
    assert report["questions"] == 3
    assert [t["answer"] for t in report["transcript"]] == ["wrong", "wrong", "correct"]

    status, payload = request(base_url, "POST", f"/sessions/{sid}/answers", {"answer": "correct"})
    assert status == 409


def test_all_correct_reports_no_bug(base_url):
    _, created = request(base_url, "POST", "/sessions",
                         {"et": figure4_doc(), "strategy": "dqo"})
    sid = created["session"]
    payload = {"finished": False}
    while not payload["finished"]:
        _, payload = request(base_url, "POST", f"/sessions/{sid}/answers", {"answer": "correct"})
    assert payload["report"]["buggy"] is None
    _, snap = request(base_url, "GET", f"/sessions/{sid}/tree")
    assert snap["node_count"] == 0
    assert snap["root"] is None


def test_tree_after_correct_removes_subtree(base_url):
    doc = json.loads((fixtures_dir() / "figure7.json").read_text())
    _, created = request(base_url, "POST", "/sessions", {"et": doc, "strategy": "dqo"})
    sid = created["session"]
    _, snap = request(base_url, "GET", f"/sessions/{sid}/tree")
    assert snap["root"]["w"] == 20.0
    _, _ = request(base_url, "POST", f"/sessions/{sid}/answers", {"answer": "correct"})
    _, snap = request(base_url, "GET", f"/sessions/{sid}/tree")
    assert snap["node_count"] == 8  # the weight-12 subtree is gone
    ids = _collect_ids(snap["root"])
    assert 1 not in ids
    assert _pending_count(snap["root"]) == 1


def test_unknown_session_404(base_url):
    status, payload = request(base_url, "GET", "/sessions/deadbeef/tree")
    assert status == 404
    status, payload = request(base_url, "POST", "/sessions/deadbeef/answers",
                              {"answer": "correct"})
    assert status == 404


def test_bad_answer_value(base_url):
    _, created = request(base_url, "POST", "/sessions",
                         {"et": figure4_doc(), "strategy": "dqo"})
    sid = created["session"]
    status, payload = request(base_url, "POST", f"/sessions/{sid}/answers", {"answer": "maybe"})
    assert status == 400


def test_delete_session(base_url):
    _, created = request(base_url, "POST", "/sessions",
                         {"et": figure4_doc(), "strategy": "dqo"})
    sid = created["session"]
    status, _ = request(base_url, "DELETE", f"/sessions/{sid}")
    assert status == 204
    status, _ = request(base_url, "GET", f"/sessions/{sid}/tree")
    assert status == 404


def test_fixtures_served(base_url):
    status, payload = request(base_url, "GET", "/fixtures")
    assert status == 200
    assert "figure4" in payload["fixtures"]
    status, doc = request(base_url, "GET", "/fixtures/figure4.json")
    assert status == 200
    assert doc["root"] == 0


def test_snapshot_metrics_satisfy_split_equations(base_url):
    _, created = request(base_url, "POST", "/sessions",
                         {"et": figure4_doc(), "strategy": "dqo-general"})
    sid = created["session"]
    _, snap = request(base_url, "GET", f"/sessions/{sid}/tree")
    root_w = snap["root"]["w"]

    def walk(node):
        if node["marking"] == "undefined":
            assert node["w"] == pytest.approx(node["down"] + node["wi"])
            assert root_w == pytest.approx(node["up"] + node["down"] + node["wi"])
        for child in node["children"]:
            walk(child)

    walk(snap["root"])


def test_idle_sessions_evicted():
    store = SessionStore(idle_seconds=0.01)
    service = DebugService(store)
    created = service.create_session({
        "et": {"name": "c", "root": 0, "nodes": [
            {"id": 0, "label": "a", "children": [1]},
            {"id": 1, "label": "b", "children": []},
        ]},
        "strategy": "dqo",
    })
    assert len(store) == 1
    time.sleep(0.05)
    store.sweep()
    assert len(store) == 0


def _count(node) -> int:
    return 1 + sum(_count(c) for c in node["children"])


def _pending_count(node) -> int:
    return (1 if node["pending"] else 0) + sum(_pending_count(c) for c in node["children"])


def _collect_ids(node) -> set[int]:
    out = {node["id"]}
    for c in node["children"]:
        out |= _collect_ids(c)
    return out
