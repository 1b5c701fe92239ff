"""Embedding providers: a deterministic local hasher and a remote HTTP encoder.

The local provider exists so a catalogue can always be rebuilt offline; the
remote provider speaks the simple batch protocol (POST a JSON array of
strings, receive a JSON array of float arrays).
"""

from __future__ import annotations

import hashlib
import re
import time
from typing import Protocol, Sequence

import numpy as np
import requests

from .errors import ProviderFailure

_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


class EmbeddingProvider(Protocol):
    dim: int

    def embed_batch(self, texts: Sequence[str]) -> np.ndarray: ...


def local_embed(text: str, dim: int, seed: int) -> np.ndarray:
    """Signed feature hashing of lowercased word tokens, L2-normalized.

    A keyed 64-bit hash of each token selects an index (hash mod dim) and a
    sign (top hash bit); contributions accumulate and the result is
    normalized. Empty text returns the zero vector unnormalized.
    """
    if dim < 2:
        raise ValueError("dim must be >= 2")
    key = (seed % 2**64).to_bytes(8, "little")
    vec = np.zeros(dim, dtype=np.float64)
    for token in _TOKEN_RE.findall(text.lower()):
        h = int.from_bytes(
            hashlib.blake2b(token.encode("utf-8"), key=key, digest_size=8).digest(),
            "little",
        )
        sign = 1.0 if (h >> 63) & 1 == 0 else -1.0
        vec[h % dim] += sign
    norm = float(np.linalg.norm(vec))
    if norm > 0.0:
        vec /= norm
    return vec


class LocalHashEmbedder:
    """Deterministic offline provider; same text and config give the same vector."""

    def __init__(self, dim: int = 256, seed: int = 0):
        self.dim = dim
        self.seed = seed

    def embed_batch(self, texts: Sequence[str]) -> np.ndarray:
        out = np.zeros((len(texts), self.dim), dtype=np.float64)
        for i, text in enumerate(texts):
            out[i] = local_embed(text, self.dim, self.seed)
        return out


class RemoteEmbedder:
    """HTTP batch encoder with retry/backoff.

    POSTs the texts as a JSON array; the endpoint must answer with a JSON
    array of float arrays, one per text, all of dimension ``dim``.
    """

    def __init__(
        self,
        url: str,
        dim: int,
        auth_token: str | None = None,
        timeout: float = 30.0,
        retries: int = 3,
        backoff: float = 1.0,
        session: requests.Session | None = None,
    ):
        self.url = url
        self.dim = dim
        self.auth_token = auth_token
        self.timeout = timeout
        self.retries = retries
        self.backoff = backoff
        self._session = session or requests.Session()

    def embed_batch(self, texts: Sequence[str]) -> np.ndarray:
        headers = {"Content-Type": "application/json"}
        if self.auth_token:
            headers["Authorization"] = f"Bearer {self.auth_token}"
        last_error: Exception | None = None
        for attempt in range(self.retries):
            try:
                resp = self._session.post(
                    self.url, json=list(texts), headers=headers, timeout=self.timeout
                )
                if resp.status_code != 200:
                    raise ProviderFailure(f"provider returned HTTP {resp.status_code}")
                return self._validate(resp.json(), len(texts))
            except (requests.RequestException, ValueError, ProviderFailure) as exc:
                last_error = exc
                if attempt + 1 < self.retries:
                    time.sleep(self.backoff * 2**attempt)
        raise ProviderFailure(f"provider unreachable after {self.retries} attempts: {last_error}")

    def _validate(self, payload: object, expected: int) -> np.ndarray:
        arr = np.asarray(payload, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] != expected or arr.shape[1] != self.dim:
            raise ProviderFailure(
                f"provider response shape {getattr(arr, 'shape', None)} does not match "
                f"({expected}, {self.dim})"
            )
        return arr


class InstrumentedProvider:
    """Wraps a provider and counts embed_batch calls (serving-path audits)."""

    def __init__(self, inner: EmbeddingProvider):
        self.inner = inner
        self.calls = 0

    @property
    def dim(self) -> int:
        return self.inner.dim

    def embed_batch(self, texts: Sequence[str]) -> np.ndarray:
        self.calls += 1
        return self.inner.embed_batch(texts)
