"""Model construction and loading.

The tokenizer is byte-level, so no vocabulary files are needed and any
checkpoint directory is self-contained. "tiny-random" builds a small
randomly initialized encoder-decoder for CPU-scale smoke training;
any other id is treated as a local checkpoint directory or a hub id
for full-scale runs.
"""
from __future__ import annotations

from pathlib import Path

import torch
from transformers import ByT5Tokenizer, T5Config, T5ForConditionalGeneration

TINY_RANDOM = "tiny-random"

# 3 specials + 256 bytes + 125 sentinel tokens, the byte-level layout.
_BYTE_VOCAB = 384


def build_tokenizer() -> ByT5Tokenizer:
    return ByT5Tokenizer()


def _tiny_config() -> T5Config:
    return T5Config(
        vocab_size=_BYTE_VOCAB,
        d_model=64,
        d_kv=16,
        d_ff=128,
        num_layers=2,
        num_decoder_layers=2,
        num_heads=4,
        decoder_start_token_id=0,
        dropout_rate=0.0,
    )


def build_model(base: str, seed: int = 0) -> T5ForConditionalGeneration:
    if base == TINY_RANDOM:
        torch.manual_seed(seed)
        return T5ForConditionalGeneration(_tiny_config())
    return T5ForConditionalGeneration.from_pretrained(base)


def save_checkpoint(model: T5ForConditionalGeneration, tokenizer, out_dir) -> Path:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    model.save_pretrained(out_dir)
    tokenizer.save_pretrained(out_dir)
    return out_dir


def load_checkpoint(path) -> tuple[T5ForConditionalGeneration, ByT5Tokenizer]:
    model = T5ForConditionalGeneration.from_pretrained(path)
    model.eval()
    return model, build_tokenizer()
