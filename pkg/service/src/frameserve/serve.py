"""Generation service implementing the frameparse wire protocol.

POST /generate {"inputs": [...], "max_new_tokens": n} -> {"outputs":
[...]} with order and length preserved; GET /healthz for liveness.
Malformed requests get 400, concurrency overload gets 429. Decoding
is greedy and deterministic.
"""
from __future__ import annotations

import threading

import torch
from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from frameserve.model import load_checkpoint

MAX_BATCH = 256
MAX_NEW_TOKENS_CAP = 1024


class GenerateRequest(BaseModel):
    inputs: list[str] = Field(..., max_length=MAX_BATCH)
    max_new_tokens: int = Field(default=512, ge=1, le=MAX_NEW_TOKENS_CAP)


class Generator:
    """Wraps one model instance; generation is serialized per process."""

    def __init__(self, checkpoint: str, max_input_chars: int = 512) -> None:
        self.model, self.tokenizer = load_checkpoint(checkpoint)
        self.max_input_chars = max_input_chars
        self._lock = threading.Lock()

    def generate(self, inputs: list[str], max_new_tokens: int) -> list[str]:
        if not inputs:
            return []
        clipped = [s[: self.max_input_chars] for s in inputs]
        enc = self.tokenizer(clipped, return_tensors="pt", padding=True)
        with self._lock, torch.no_grad():
            out = self.model.generate(
                input_ids=enc.input_ids,
                attention_mask=enc.attention_mask,
                max_new_tokens=max_new_tokens,
                do_sample=False,
                num_beams=1,
            )
        return self.tokenizer.batch_decode(out, skip_special_tokens=True)


def create_app(
    checkpoint: str | None = None,
    max_concurrent: int = 4,
    generator: Generator | None = None,
) -> FastAPI:
    if generator is None:
        if checkpoint is None:
            raise ValueError("create_app needs a checkpoint path or a generator")
        generator = Generator(checkpoint)
    app = FastAPI(title="frameparse generation service")
    slots = threading.BoundedSemaphore(max_concurrent)

    @app.exception_handler(RequestValidationError)
    async def _bad_request(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"error": str(exc.errors()[:3])})

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.post("/generate")
    def generate(req: GenerateRequest):
        if not slots.acquire(blocking=False):
            return JSONResponse(status_code=429, content={"error": "overloaded"})
        try:
            outputs = generator.generate(req.inputs, req.max_new_tokens)
        finally:
            slots.release()
        return {"outputs": outputs}

    return app


def serve(checkpoint: str, host: str = "127.0.0.1", port: int = 8923, max_concurrent: int = 4):
    import uvicorn

    app = create_app(checkpoint, max_concurrent=max_concurrent)
    uvicorn.run(app, host=host, port=port, log_level="warning")
