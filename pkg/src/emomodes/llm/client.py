"""Chat-completion backends: generic HTTP wire contract, scripted stand-in
for tests, and an on-disk response cache keyed by the conversation prefix.

The wire contract is the plain chat shape: POST JSON
``{model, temperature, messages: [{role, content}, ...]}`` returning
``{choices: [{message: {content}}]}``. The credential is read from an
environment variable named in the config, never from flags or files.
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional, Protocol, Sequence

from ..errors import BackendError


@dataclass(frozen=True)
class AnnotatorConfig:
    endpoint: str = ""
    model: str = ""
    credential_env: str = "EMOMODES_API_KEY"
    temperature: float = 0.0
    max_retries: int = 3
    backoff: float = 1.0
    cache_dir: Optional[str] = None
    max_in_flight: int = 1

    def __post_init__(self):
        if self.temperature < 0:
            raise ValueError("temperature must be >= 0")
        if self.max_retries < 0:
            raise ValueError("max_retries must be >= 0")
        if self.max_in_flight < 1:
            raise ValueError("max_in_flight must be >= 1")


class ChatBackend(Protocol):
    def complete(self, messages: list[dict], model: str, temperature: float) -> str:
        ...


class HttpChatBackend:
    """POSTs the conversation to a chat-completion endpoint with
    exponential backoff on transient failures (connection errors, 429,
    5xx)."""

    def __init__(self, cfg: AnnotatorConfig, sleep: Callable[[float], None] = time.sleep):
        if not cfg.endpoint:
            raise ValueError("endpoint required")
        self.cfg = cfg
        self._sleep = sleep

    def _headers(self) -> dict:
        headers = {"Content-Type": "application/json"}
        key = os.environ.get(self.cfg.credential_env, "")
        if key:
            headers["Authorization"] = f"Bearer {key}"
        return headers

    def complete(self, messages: list[dict], model: str, temperature: float) -> str:
        import requests

        payload = {"model": model, "temperature": temperature, "messages": messages}
        last_error: Exception | None = None
        for attempt in range(self.cfg.max_retries + 1):
            try:
                resp = requests.post(
                    self.cfg.endpoint,
                    json=payload,
                    headers=self._headers(),
                    timeout=60,
                )
                if resp.status_code == 429 or resp.status_code >= 500:
                    last_error = BackendError(
                        f"HTTP {resp.status_code}: {resp.text[:200]}"
                    )
                elif resp.status_code != 200:
                    raise BackendError(f"HTTP {resp.status_code}: {resp.text[:200]}")
                else:
                    data = resp.json()
                    return data["choices"][0]["message"]["content"]
            except BackendError:
                raise
            except Exception as e:  # connection/timeout/JSON shape errors
                last_error = e
            if attempt < self.cfg.max_retries:
                self._sleep(self.cfg.backoff * (2 ** attempt))
        raise BackendError(f"backend failed after {self.cfg.max_retries + 1} attempts: {last_error}")


class ScriptedBackend:
    """Deterministic test backend: replies from a list, or from a callable
    given the messages. Counts every call."""

    def __init__(self, replies: Sequence[str] | Callable[[list[dict]], str]):
        self._replies = replies
        self._cursor = 0
        self.calls = 0

    def complete(self, messages: list[dict], model: str, temperature: float) -> str:
        self.calls += 1
        if callable(self._replies):
            return self._replies(messages)
        if self._cursor >= len(self._replies):
            raise BackendError("scripted backend exhausted")
        reply = self._replies[self._cursor]
        self._cursor += 1
        return reply


def cache_key(messages: list[dict], model: str, temperature: float) -> str:
    """Cryptographic key over the full conversation prefix and sampling
    parameters: identical inputs always hit the same entry."""
    blob = json.dumps(
        {"messages": messages, "model": model, "temperature": temperature},
        sort_keys=True,
        ensure_ascii=False,
    ).encode("utf-8")
    return hashlib.sha256(blob).hexdigest()


class ResponseCache:
    """One JSON file per completed turn under the cache directory."""

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)

    def _path(self, key: str) -> Path:
        return self.directory / f"{key}.json"

    def get(self, key: str) -> Optional[str]:
        path = self._path(key)
        if not path.exists():
            return None
        with open(path, encoding="utf-8") as f:
            return json.load(f)["content"]

    def put(self, key: str, content: str) -> None:
        tmp = self._path(key).with_suffix(".tmp")
        with open(tmp, "w", encoding="utf-8") as f:
            json.dump({"content": content}, f, ensure_ascii=False)
        tmp.replace(self._path(key))


class NullCache:
    def get(self, key: str) -> Optional[str]:
        return None

    def put(self, key: str, content: str) -> None:
        pass


def make_cache(cfg: AnnotatorConfig):
    return ResponseCache(cfg.cache_dir) if cfg.cache_dir else NullCache()
