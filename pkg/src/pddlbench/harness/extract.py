"""Pull PDDL texts and plan steps out of raw model responses.

Model output arrives as free text. The extractors try structured carriers
first and degrade gracefully: JSON object, then fenced code blocks, then
bare forms in the raw text. Extraction never judges validity; whatever is
found goes to the parser, which owns syntax verdicts.
"""

from __future__ import annotations

import json
import re

from ..errors import ExtractionFailure

_FENCE = re.compile(r"```[^\n`]*\n(.*?)```", re.DOTALL)
_DEFINE_HEAD = re.compile(r"\(\s*define\s*\(\s*(domain|problem)\b", re.IGNORECASE)
# One flat step like (pick-up a) or (STACK A B); no nesting, no variables.
_STEP = re.compile(r"\(\s*[A-Za-z][A-Za-z0-9_-]*(?:\s+[A-Za-z0-9_-]+)*\s*\)")
_FLAT_LINE = re.compile(
    r"^{step}(?:\s+{step})*$".format(step=_STEP.pattern)
)

# Inline JSON may start anywhere; trying every brace would be quadratic on
# adversarial output, so only the first few are considered.
_MAX_BRACE_STARTS = 50


def _json_candidates(raw: str):
    text = raw.strip()
    if text.startswith("{") or text.startswith("["):
        yield text
    for block in _FENCE.findall(raw):
        yield block.strip()
    for match in list(re.finditer(r"{", raw))[:_MAX_BRACE_STARTS]:
        yield raw[match.start():]


def _first_json(raw: str):
    decoder = json.JSONDecoder()
    for candidate in _json_candidates(raw):
        try:
            value, _ = decoder.raw_decode(candidate)
        except ValueError:
            continue
        if isinstance(value, (dict, list)):
            return value
    return None


def _pick_key(data: dict, pattern: str) -> str | None:
    """Prefer keys naming the file itself over e.g. *_description keys."""
    hits = [k for k in data if isinstance(k, str) and re.search(pattern, k, re.I)]
    primary = [k for k in hits if not re.search(r"description", k, re.I)]
    for key in primary or hits:
        if isinstance(data[key], str) and data[key].strip():
            return key
    return None


def _balanced_forms(text: str):
    """Yield every top-level balanced ``(define ...)`` span, in order."""
    pos = 0
    while True:
        match = _DEFINE_HEAD.search(text, pos)
        if match is None:
            return
        depth = 0
        start = match.start()
        for i in range(start, len(text)):
            if text[i] == "(":
                depth += 1
            elif text[i] == ")":
                depth -= 1
                if depth == 0:
                    yield match.group(1).lower(), text[start : i + 1]
                    pos = i + 1
                    break
        else:
            # Unclosed form: take the rest, the parser will report precisely.
            yield match.group(1).lower(), text[start:]
            return


def _classify_forms(text: str) -> tuple[str | None, str | None]:
    df = pf = None
    for kind, form in _balanced_forms(text):
        if kind == "domain" and df is None:
            df = form
        elif kind == "problem" and pf is None:
            pf = form
    return df, pf


def extract_pddl(raw: str) -> tuple[str, str]:
    """Return (df_text, pf_text), trying JSON, fenced blocks, then bare forms."""
    df = pf = None

    data = _first_json(raw)
    if isinstance(data, dict):
        df_key = _pick_key(data, r"domain")
        pf_key = _pick_key(data, r"problem")
        if df_key is not None:
            df = data[df_key].strip()
        if pf_key is not None:
            pf = data[pf_key].strip()
        if df and pf:
            return df, pf

    for block in _FENCE.findall(raw):
        got_df, got_pf = _classify_forms(block)
        df = df or got_df
        pf = pf or got_pf
    if df and pf:
        return df, pf

    got_df, got_pf = _classify_forms(raw)
    df = df or got_df
    pf = pf or got_pf
    if df and pf:
        return df, pf

    missing = tuple(
        name for name, text in (("domain", df), ("problem", pf)) if not text
    )
    raise ExtractionFailure(missing)


def _steps_in(text: str) -> list[str]:
    steps = []
    for line in text.splitlines():
        line = line.strip()
        if line and _FLAT_LINE.match(line):
            steps.extend(_STEP.findall(line))
    return steps


def extract_plan(raw: str) -> str:
    """Return plan text, one flat step per line, trying JSON, fences, raw lines."""
    data = _first_json(raw)
    if data is not None:
        items = None
        if isinstance(data, dict):
            key = _pick_key_list(data, r"plan")
            if key is not None:
                items = data[key]
        elif isinstance(data, list):
            items = data
        if items is not None:
            steps = _steps_in("\n".join(str(item).strip() for item in items))
            if steps:
                return "\n".join(steps) + "\n"

    for block in _FENCE.findall(raw):
        steps = _steps_in(block)
        if steps:
            return "\n".join(steps) + "\n"

    steps = _steps_in(raw)
    if steps:
        return "\n".join(steps) + "\n"
    raise ExtractionFailure(("plan",))


def _pick_key_list(data: dict, pattern: str) -> str | None:
    for key in data:
        if isinstance(key, str) and re.search(pattern, key, re.I):
            if isinstance(data[key], list):
                return key
    return None
