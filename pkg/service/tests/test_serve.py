from __future__ import annotations

import threading
import time

import pytest
from fastapi.testclient import TestClient

from frameserve.serve import create_app


class EchoGenerator:
    def generate(self, inputs, max_new_tokens):
        return [s.partition(": ")[2] for s in inputs]


class SlowGenerator:
    def generate(self, inputs, max_new_tokens):
        time.sleep(0.4)
        return list(inputs)


@pytest.fixture(scope="module")
def model_client(toy_run):
    _run, result = toy_run
    app = create_app(str(result.checkpoint))
    with TestClient(app) as client:
        yield client


class TestWireConformance:
    def test_healthz(self, model_client):
        resp = model_client.get("/healthz")
        assert resp.status_code == 200

    def test_single_input_single_output(self, model_client):
        resp = model_client.post(
            "/generate", json={"inputs": ["TRIGGER: Hi."], "max_new_tokens": 8}
        )
        assert resp.status_code == 200
        outputs = resp.json()["outputs"]
        assert isinstance(outputs, list) and len(outputs) == 1
        assert isinstance(outputs[0], str)

    def test_batch_length_and_order_preserved(self, model_client):
        inputs = [f"TRIGGER: Sentence number {i}." for i in range(64)]
        resp = model_client.post(
            "/generate", json={"inputs": inputs, "max_new_tokens": 4}
        )
        assert resp.status_code == 200
        outputs = resp.json()["outputs"]
        assert len(outputs) == 64
        # Reversing the batch reverses the outputs exactly.
        resp_rev = model_client.post(
            "/generate", json={"inputs": inputs[::-1], "max_new_tokens": 4}
        )
        assert resp_rev.json()["outputs"] == outputs[::-1]

    def test_deterministic_decoding(self, model_client):
        payload = {"inputs": ["TRIGGER: Same input twice."], "max_new_tokens": 8}
        a = model_client.post("/generate", json=payload).json()["outputs"]
        b = model_client.post("/generate", json=payload).json()["outputs"]
        assert a == b

    def test_empty_batch(self, model_client):
        resp = model_client.post("/generate", json={"inputs": []})
        assert resp.status_code == 200
        assert resp.json()["outputs"] == []

    @pytest.mark.parametrize(
        "payload",
        [
            {"inputs": "not a list"},
            {"inputs": [1, 2, 3]},
            {},
            {"inputs": ["x"], "max_new_tokens": 0},
            {"inputs": ["x"], "max_new_tokens": 999999},
        ],
    )
    def test_malformed_request_is_400(self, model_client, payload):
        resp = model_client.post("/generate", json=payload)
        assert resp.status_code == 400

    def test_fuzzed_wellformed_requests_conform(self, model_client):
        import random

        rng = random.Random(5)
        for _ in range(10):
            n = rng.randint(1, 5)
            inputs = ["TRIGGER: " + "".join(rng.choices("abc ", k=rng.randint(1, 30)))
                      for _ in range(n)]
            resp = model_client.post(
                "/generate", json={"inputs": inputs, "max_new_tokens": rng.randint(1, 8)}
            )
            assert resp.status_code == 200
            outputs = resp.json()["outputs"]
            assert len(outputs) == n and all(isinstance(o, str) for o in outputs)


class TestOverload:
    def test_concurrent_overflow_gets_429(self):
        app = create_app(generator=SlowGenerator(), max_concurrent=1)
        statuses = []
        with TestClient(app) as client:
            def hit():
                resp = client.post("/generate", json={"inputs": ["TRIGGER: x"]})
                statuses.append(resp.status_code)

            threads = [threading.Thread(target=hit) for _ in range(3)]
            for t in threads:
                t.start()
            for t in threads:
                t.join()
        assert 200 in statuses and 429 in statuses


class TestEchoApp:
    def test_injected_generator(self):
        app = create_app(generator=EchoGenerator())
        with TestClient(app) as client:
            resp = client.post("/generate", json={"inputs": ["TRIGGER: Hello."]})
            assert resp.json()["outputs"] == ["Hello."]
