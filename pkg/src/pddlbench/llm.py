"""Cache-backed client for a chat-completion HTTP endpoint.

All network nondeterminism lives behind LlmClient. Responses are cached as
content-addressed JSON files keyed by a hash of the full request plus a
replicate index; with a fixed cache the rest of the harness is a pure
function of its inputs. In replay mode a cache miss is a hard error, which
is what makes the shipped fixture tests hermetic.

Credentials are read from the environment at call time and are never
written to cache files, records, or error messages.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
import threading
import time
from dataclasses import dataclass, replace
from pathlib import Path
from typing import NamedTuple

from .errors import CacheMiss, ConfigError, EndpointError

ENV_URL = "PDDLBENCH_LLM_URL"
ENV_API_KEY = "PDDLBENCH_LLM_API_KEY"
ENV_ORG = "PDDLBENCH_LLM_ORG"

MODES = ("record", "replay")

_ROLES = ("system", "user", "assistant")

# Transient HTTP statuses worth retrying with backoff.
_RETRY_STATUSES = {408, 429, 500, 502, 503, 504}


class TokenUsage(NamedTuple):
    input_tokens: int
    output_tokens: int


@dataclass(frozen=True)
class LlmRequest:
    """One chat completion call. Unset sampling knobs use endpoint defaults."""

    model_id: str
    messages: tuple[tuple[str, str], ...]
    temperature: float | None = None
    max_output_tokens: int | None = None

    def __post_init__(self):
        object.__setattr__(
            self, "messages", tuple((role, text) for role, text in self.messages)
        )
        if not self.model_id:
            raise ValueError("model_id must be nonempty")
        if not self.messages:
            raise ValueError("messages must be nonempty")
        for role, _ in self.messages:
            if role not in _ROLES:
                raise ValueError(
                    f"unknown role {role!r}, expected one of {', '.join(_ROLES)}"
                )


@dataclass(frozen=True)
class LlmResponse:
    """Raw, untrimmed model output plus token accounting."""

    text: str
    usage: TokenUsage = TokenUsage(0, 0)
    cached: bool = False


def cache_key(req: LlmRequest, replicate_index: int = 0) -> str:
    """Stable hex digest of the request content plus replicate index."""
    payload = json.dumps(
        {
            "model_id": req.model_id,
            "messages": [[role, text] for role, text in req.messages],
            "temperature": req.temperature,
            "max_output_tokens": req.max_output_tokens,
            "replicate_index": replicate_index,
        },
        sort_keys=True,
        separators=(",", ":"),
        ensure_ascii=False,
    )
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def _atomic_write_json(path: Path, payload: dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            json.dump(payload, handle, indent=2, ensure_ascii=False)
            handle.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def seed_cache(
    cache_dir: str | Path,
    req: LlmRequest,
    text: str,
    replicate_index: int = 0,
    usage: tuple[int, int] = (0, 0),
) -> str:
    """Store a canned response for a request; returns the cache key."""
    key = cache_key(req, replicate_index)
    entry = {
        "key": key,
        "model_id": req.model_id,
        "messages": [[role, body] for role, body in req.messages],
        "temperature": req.temperature,
        "max_output_tokens": req.max_output_tokens,
        "replicate_index": replicate_index,
        "response": {"text": text, "usage": list(usage)},
    }
    _atomic_write_json(Path(cache_dir) / f"{key}.json", entry)
    return key


class LlmClient:
    """Chat-completion client with a persistent response cache.

    mode "record": serve hits from cache, fill misses over the network.
    mode "replay": serve hits from cache, raise CacheMiss otherwise —
    no network, no credentials needed.
    """

    def __init__(
        self,
        cache_dir: str | Path,
        mode: str = "record",
        endpoint_url: str | None = None,
        api_key: str | None = None,
        org_id: str | None = None,
        max_in_flight: int = 4,
        timeout: float = 120.0,
        max_attempts: int = 3,
        backoff_seconds: float = 1.0,
        session=None,
        sleep=time.sleep,
    ):
        if mode not in MODES:
            raise ConfigError(f"unknown mode {mode!r}, expected one of {MODES}")
        if max_in_flight < 1:
            raise ConfigError("max_in_flight must be at least 1")
        self.cache_dir = Path(cache_dir)
        self.mode = mode
        self._endpoint_url = endpoint_url
        self._api_key = api_key
        self._org_id = org_id
        self._timeout = timeout
        self._max_attempts = max_attempts
        self._backoff = backoff_seconds
        self._session = session
        self._sleep = sleep
        self._gate = threading.BoundedSemaphore(max_in_flight)

    def complete(self, req: LlmRequest, replicate_index: int = 0) -> LlmResponse:
        key = cache_key(req, replicate_index)
        hit = self._read_cache(key)
        if hit is not None:
            return replace(hit, cached=True)
        if self.mode == "replay":
            raise CacheMiss(f"no cached response for key {key}")
        response = self._call_endpoint(req)
        self._write_cache(key, req, replicate_index, response)
        return response

    def _cache_path(self, key: str) -> Path:
        return self.cache_dir / f"{key}.json"

    def _read_cache(self, key: str) -> LlmResponse | None:
        path = self._cache_path(key)
        if not path.exists():
            return None
        entry = json.loads(path.read_text(encoding="utf-8"))
        stored = entry["response"]
        usage = TokenUsage(*stored.get("usage", (0, 0)))
        return LlmResponse(text=stored["text"], usage=usage, cached=True)

    def _write_cache(
        self, key: str, req: LlmRequest, replicate_index: int, response: LlmResponse
    ) -> None:
        entry = {
            "key": key,
            "model_id": req.model_id,
            "messages": [[role, body] for role, body in req.messages],
            "temperature": req.temperature,
            "max_output_tokens": req.max_output_tokens,
            "replicate_index": replicate_index,
            "response": {"text": response.text, "usage": list(response.usage)},
        }
        _atomic_write_json(self._cache_path(key), entry)

    def _config(self) -> tuple[str, str, str | None]:
        url = self._endpoint_url or os.environ.get(ENV_URL)
        key = self._api_key or os.environ.get(ENV_API_KEY)
        org = self._org_id or os.environ.get(ENV_ORG)
        if not url:
            raise ConfigError(f"no endpoint URL configured (set {ENV_URL})")
        if not key:
            raise ConfigError(f"no API key configured (set {ENV_API_KEY})")
        return url, key, org

    def _post(self, url: str, headers: dict, payload: dict):
        if self._session is None:
            import requests

            self._session = requests.Session()
        return self._session.post(
            url, headers=headers, json=payload, timeout=self._timeout
        )

    def _call_endpoint(self, req: LlmRequest) -> LlmResponse:
        url, api_key, org = self._config()
        headers = {"Authorization": f"Bearer {api_key}"}
        if org:
            headers["OpenAI-Organization"] = org
        payload: dict = {
            "model": req.model_id,
            "messages": [
                {"role": role, "content": text} for role, text in req.messages
            ],
        }
        if req.temperature is not None:
            payload["temperature"] = req.temperature
        if req.max_output_tokens is not None:
            payload["max_tokens"] = req.max_output_tokens

        last_error = "no attempt made"
        last_status: int | None = None
        with self._gate:
            for attempt in range(self._max_attempts):
                if attempt:
                    self._sleep(self._backoff * 2 ** (attempt - 1))
                try:
                    http = self._post(url, headers, payload)
                except OSError as exc:
                    last_error = f"connection error: {exc}"
                    last_status = None
                    continue
                status = http.status_code
                if status in _RETRY_STATUSES:
                    last_error = f"HTTP {status}: {http.text[:200]}"
                    last_status = status
                    continue
                if status != 200:
                    raise EndpointError(
                        f"HTTP {status}: {http.text[:200]}", status=status
                    )
                return self._parse_response(http)
        raise EndpointError(
            f"endpoint failed after {self._max_attempts} attempts; last: {last_error}",
            status=last_status,
        )

    @staticmethod
    def _parse_response(http) -> LlmResponse:
        try:
            data = http.json()
            text = data["choices"][0]["message"]["content"]
        except (ValueError, KeyError, IndexError, TypeError) as exc:
            raise EndpointError(
                f"malformed endpoint response ({exc}): {http.text[:200]}", status=200
            )
        usage = data.get("usage") or {}
        return LlmResponse(
            text=text,
            usage=TokenUsage(
                int(usage.get("prompt_tokens", 0)),
                int(usage.get("completion_tokens", 0)),
            ),
            cached=False,
        )
