"""Zero-/few-shot correction prompts and the batch runner that sends them."""

from __future__ import annotations

import hashlib
import json
import logging
import os
import random
import threading
import time
from concurrent.futures import FIRST_COMPLETED, ThreadPoolExecutor, wait
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Protocol, Sequence

import httpx

from .m2 import M2Sentence, apply_edits

log = logging.getLogger(__name__)

DEFAULT_INSTRUCTION = "Correct the grammatical errors in the following sentence:"

EXEMPLARS: tuple[tuple[str, str], ...] = (
    ("This is important thing.", "This is an important thing."),
    ("Water is needed for alive.", "Water is necessary to live."),
    (
        "And young people spend time more ther lifestile.",
        "And young people spend more time on their lifestyles.",
    ),
    (
        "Both of these men have dealed with situations in an unconventional manner "
        "and the results are with everyone to see.",
        "Both of these men have dealt with situations in an unconventional manner "
        "and the results are plain to see.",
    ),
)

STATUSES = ("ok", "empty", "failed")


class PromptError(ValueError):
    pass


class EndpointError(RuntimeError):
    pass


@dataclass(frozen=True)
class PromptConfig:
    instruction: str = DEFAULT_INSTRUCTION
    exemplars: tuple[tuple[str, str], ...] = EXEMPLARS
    n_shots: int = 0
    delimiter_left: str = "{"
    delimiter_right: str = "}"
    temperature: float = 0.0
    max_tokens: int = 64

    def __post_init__(self):
        object.__setattr__(self, "exemplars", tuple(tuple(p) for p in self.exemplars))
        if self.n_shots > len(self.exemplars):
            raise PromptError(f"exemplar bank has {len(self.exemplars)} entries, cannot use {self.n_shots} shots")
        if not 0 <= self.n_shots <= 4:
            raise PromptError(f"n_shots must be between 0 and 4, got {self.n_shots}")
        if not self.delimiter_left or not self.delimiter_right:
            raise PromptError("delimiters must be non-empty")
        if self.delimiter_left == self.delimiter_right:
            raise PromptError("left and right delimiters must differ")

    @property
    def max_model_token_length(self) -> int:
        return 256 if self.n_shots == 0 else 512

    def wrap(self, text: str) -> str:
        return f"{self.delimiter_left}{text}{self.delimiter_right}"

    def snapshot(self) -> dict:
        d = asdict(self)
        d["exemplars"] = [list(p) for p in self.exemplars]
        d["max_model_token_length"] = self.max_model_token_length
        return d


@dataclass(frozen=True)
class Prompt:
    text: str
    shots: int
    truncated: bool


def _render(cfg: PromptConfig, tokens: Sequence[str], shots: int) -> str:
    lines = [cfg.instruction]
    for bad, good in cfg.exemplars[:shots]:
        lines.append(f"{cfg.wrap(bad)} => {cfg.wrap(good)}")
    lines.append(f"{cfg.wrap(' '.join(tokens))} =>")
    return "\n".join(lines)


def render_prompt(cfg: PromptConfig, tokens: Sequence[str]) -> Prompt:
    """Render a prompt, dropping the last exemplars if it exceeds the budget.

    The budget is measured in whitespace tokens.
    """
    budget = cfg.max_model_token_length
    shots = cfg.n_shots
    text = _render(cfg, tokens, shots)
    while shots > 0 and len(text.split()) > budget:
        shots -= 1
        text = _render(cfg, tokens, shots)
    truncated = shots < cfg.n_shots or len(text.split()) > budget
    if truncated:
        log.warning("prompt over %d-token budget; using %d of %d shots", budget, shots, cfg.n_shots)
    return Prompt(text, shots, truncated)


def build_prompt(cfg: PromptConfig, tokens: Sequence[str]) -> str:
    return render_prompt(cfg, tokens).text


def parse_completion(raw: str, cfg: PromptConfig) -> list[str]:
    """Extract the corrected sentence from a model completion.

    Takes the content of the first balanced delimiter pair; without one,
    the first non-empty line. An empty list means nothing usable came back.
    """
    left, right = cfg.delimiter_left, cfg.delimiter_right
    start = raw.find(left)
    if start >= 0:
        depth, i = 0, start
        while i < len(raw):
            if raw.startswith(left, i):
                depth += 1
                i += len(left)
            elif raw.startswith(right, i):
                depth -= 1
                if depth == 0:
                    return raw[start + len(left):i].split()
                i += len(right)
            else:
                i += 1
    for line in raw.splitlines():
        line = line.strip()
        if line.startswith(left):
            line = line[len(left):]
        if line.endswith(right):
            line = line[: -len(right)]
        if line.strip():
            return line.split()
    return []


class Corrector(Protocol):
    name: str

    def complete(self, prompt: str, sentence: M2Sentence) -> str: ...


class IdentityCorrector:
    """Returns the source unchanged."""

    name = "identity"

    def __init__(self, cfg: PromptConfig = PromptConfig()):
        self.cfg = cfg

    def complete(self, prompt, sentence):
        return self.cfg.wrap(sentence.source)


class EchoReferenceCorrector:
    """Returns the gold correction of the lowest-numbered annotator."""

    name = "echo_reference"

    def __init__(self, cfg: PromptConfig = PromptConfig()):
        self.cfg = cfg

    def complete(self, prompt, sentence):
        annotator = sentence.first_annotator()
        edits = sentence.edits(annotator) if annotator is not None else []
        return self.cfg.wrap(" ".join(apply_edits(sentence.source_tokens, edits)))


class DropTokenCorrector:
    """Deletes one pseudo-randomly chosen token from every non-empty sentence."""

    name = "drop_token"

    def __init__(self, seed: int = 0, cfg: PromptConfig = PromptConfig()):
        self.seed = seed
        self.cfg = cfg

    def drop_index(self, sentence: M2Sentence) -> int | None:
        if not sentence.source_tokens:
            return None
        rng = random.Random(f"{self.seed}:{sentence.source}")
        return rng.randrange(len(sentence.source_tokens))

    def complete(self, prompt, sentence):
        i = self.drop_index(sentence)
        tokens = list(sentence.source_tokens)
        if i is not None:
            del tokens[i]
        return self.cfg.wrap(" ".join(tokens))


MOCKS = {
    "identity": IdentityCorrector,
    "echo_reference": EchoReferenceCorrector,
    "drop_token": DropTokenCorrector,
}


def make_mock(name: str, cfg: PromptConfig, seed: int = 0):
    if name not in MOCKS:
        raise ValueError(f"unknown mock {name!r}; choose from {', '.join(MOCKS)}")
    if name == "drop_token":
        return DropTokenCorrector(seed, cfg)
    return MOCKS[name](cfg)


@dataclass(frozen=True)
class CompletionEndpoint:
    base_url: str
    model: str
    api_key_env: str = "GECSTRAT_API_KEY"
    timeout: float = 60.0
    max_in_flight: int = 4
    max_attempts: int = 3
    backoff_base: float = 1.0

    def __post_init__(self):
        if self.max_in_flight < 1:
            raise EndpointError("max_in_flight must be at least 1")
        if self.max_attempts < 1:
            raise EndpointError("max_attempts must be at least 1")


def request_body(model: str, prompt: str, cfg: PromptConfig) -> dict:
    return {"model": model, "prompt": prompt, "max_tokens": cfg.max_tokens, "temperature": cfg.temperature}


def request_hash(body: dict) -> str:
    canon = json.dumps(body, sort_keys=True, ensure_ascii=False, separators=(",", ":"))
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()


class HTTPCorrector:
    """Client for a ``POST <base>/completions`` text-completion service."""

    name = "http"

    def __init__(self, endpoint: CompletionEndpoint, cfg: PromptConfig, transport: httpx.BaseTransport | None = None):
        self.endpoint = endpoint
        self.cfg = cfg
        self._transport = transport
        self._client: httpx.Client | None = None
        self._lock = threading.Lock()

    @property
    def max_in_flight(self) -> int:
        return self.endpoint.max_in_flight

    def check(self) -> None:
        ep = self.endpoint
        if not ep.base_url.startswith(("http://", "https://")):
            raise EndpointError(f"base URL must be http(s): {ep.base_url!r}")
        if not ep.model:
            raise EndpointError("no model identifier configured")
        if not os.environ.get(ep.api_key_env):
            raise EndpointError(f"auth token variable {ep.api_key_env} is not set")

    def _http(self) -> httpx.Client:
        with self._lock:
            if self._client is None:
                self.check()
                token = os.environ[self.endpoint.api_key_env]
                self._client = httpx.Client(
                    base_url=self.endpoint.base_url.rstrip("/"),
                    headers={"Authorization": f"Bearer {token}"},
                    timeout=self.endpoint.timeout,
                    transport=self._transport,
                )
            return self._client

    def complete(self, prompt, sentence):
        body = request_body(self.endpoint.model, prompt, self.cfg)
        resp = self._http().post("/completions", json=body)
        resp.raise_for_status()
        return resp.json()["choices"][0]["text"]

    def close(self):
        if self._client is not None:
            self._client.close()


class RecordingCorrector:
    """Wraps another corrector and appends every exchange to a transcript."""

    def __init__(self, inner, path: str | Path, model: str, cfg: PromptConfig):
        self.inner = inner
        self.name = f"record:{inner.name}"
        self.path = Path(path)
        self.model = model
        self.cfg = cfg
        self._lock = threading.Lock()

    @property
    def max_in_flight(self) -> int:
        return getattr(self.inner, "max_in_flight", 1)

    def check(self):
        if hasattr(self.inner, "check"):
            self.inner.check()

    def complete(self, prompt, sentence):
        text = self.inner.complete(prompt, sentence)
        entry = {
            "request_hash": request_hash(request_body(self.model, prompt, self.cfg)),
            "prompt": prompt,
            "response_text": text,
        }
        with self._lock, self.path.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(entry, ensure_ascii=False) + "\n")
        return text


class ReplayCorrector:
    """Answers from a recorded transcript instead of a live endpoint."""

    name = "replay"

    def __init__(self, path: str | Path, model: str, cfg: PromptConfig):
        self.model = model
        self.cfg = cfg
        self.by_hash: dict[str, str] = {}
        self.by_prompt: dict[str, str] = {}
        with open(path, encoding="utf-8") as fh:
            for n, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    entry = json.loads(line)
                    self.by_hash[entry["request_hash"]] = entry["response_text"]
                    self.by_prompt.setdefault(entry["prompt"], entry["response_text"])
                except (json.JSONDecodeError, KeyError) as exc:
                    raise ValueError(f"{path}:{n}: bad transcript entry ({exc})") from None

    def complete(self, prompt, sentence):
        key = request_hash(request_body(self.model, prompt, self.cfg))
        if key in self.by_hash:
            return self.by_hash[key]
        if prompt in self.by_prompt:
            return self.by_prompt[prompt]
        raise KeyError(f"no recorded response for request {key[:12]}")


@dataclass
class SentenceRecord:
    index: int
    source: str
    prompt: str
    completion: str | None
    hypothesis: list[str]
    status: str
    shots: int
    truncated: bool = False
    attempts: int = 1
    error: str | None = None
    seconds: float = field(default=0.0, compare=False)


@dataclass
class CorrectionRun:
    records: list[SentenceRecord]
    config: dict
    seconds: float = field(default=0.0, compare=False)

    def statuses(self) -> dict[str, int]:
        out = dict.fromkeys(STATUSES, 0)
        for r in self.records:
            out[r.status] += 1
        return out

    def hypotheses(self) -> list[list[str]]:
        return [r.hypothesis for r in self.records]

    def manifest(self) -> dict:
        return {
            "config": self.config,
            "sentences": len(self.records),
            "statuses": self.statuses(),
            "seconds": self.seconds,
            "truncated": sum(r.truncated for r in self.records),
            "failures": [{"index": r.index, "error": r.error} for r in self.records if r.status == "failed"],
        }


def _load_checkpoint(path: Path, corpus: Sequence[M2Sentence]) -> dict[int, SentenceRecord]:
    done: dict[int, SentenceRecord] = {}
    if not path.exists():
        return done
    for line in path.read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        try:
            rec = SentenceRecord(**json.loads(line))
        except (json.JSONDecodeError, TypeError):
            # a write cut short by the interruption; that sentence is redone
            continue
        if 0 <= rec.index < len(corpus) and rec.source == corpus[rec.index].source:
            done[rec.index] = rec
    return done


def run_batch(
    corpus: Sequence[M2Sentence],
    corrector,
    cfg: PromptConfig,
    *,
    max_in_flight: int | None = None,
    max_attempts: int = 3,
    backoff_base: float = 0.5,
    checkpoint: str | Path | None = None,
    rng: random.Random | None = None,
) -> CorrectionRun:
    """Correct every sentence of ``corpus`` once, in bounded parallel.

    Completed records are appended to ``checkpoint`` as they finish, so a
    rerun with the same file only processes what is missing. Output is in
    input order regardless of completion order.
    """
    if hasattr(corrector, "check"):
        corrector.check()
    width = max_in_flight or getattr(corrector, "max_in_flight", 1)
    if width < 1 or max_attempts < 1:
        raise ValueError("max_in_flight and max_attempts must be at least 1")
    jitter = rng or random.Random(0)
    started = time.perf_counter()

    ckpt = Path(checkpoint) if checkpoint else None
    done = _load_checkpoint(ckpt, corpus) if ckpt else {}
    write_lock = threading.Lock()

    def persist(rec: SentenceRecord):
        if ckpt is None:
            return
        with write_lock, ckpt.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(asdict(rec), ensure_ascii=False) + "\n")
            fh.flush()

    def work(index: int) -> SentenceRecord:
        sent = corpus[index]
        prompt = render_prompt(cfg, sent.source_tokens)
        t0 = time.perf_counter()
        error = None
        for attempt in range(1, max_attempts + 1):
            try:
                raw = corrector.complete(prompt.text, sent)
                break
            except Exception as exc:  # noqa: BLE001 - any endpoint failure is retried
                error = f"{type(exc).__name__}: {exc}"
                log.info("sentence %d attempt %d failed: %s", index, attempt, error)
                if attempt < max_attempts and backoff_base > 0:
                    time.sleep(backoff_base * 2 ** (attempt - 1) + jitter.uniform(0, backoff_base))
        else:
            rec = SentenceRecord(index, sent.source, prompt.text, None, list(sent.source_tokens),
                                 "failed", prompt.shots, prompt.truncated, max_attempts, error)
            rec.seconds = time.perf_counter() - t0
            persist(rec)
            return rec
        hyp = parse_completion(raw, cfg)
        status = "ok" if hyp else "empty"
        rec = SentenceRecord(index, sent.source, prompt.text, raw, hyp or list(sent.source_tokens),
                             status, prompt.shots, prompt.truncated, attempt)
        rec.seconds = time.perf_counter() - t0
        persist(rec)
        return rec

    todo = [i for i in range(len(corpus)) if i not in done]
    results = dict(done)
    with ThreadPoolExecutor(max_workers=width) as pool:
        pending = set()
        queue = iter(todo)
        try:
            for i in queue:
                pending.add(pool.submit(work, i))
                if len(pending) >= width:
                    finished, pending = wait(pending, return_when=FIRST_COMPLETED)
                    for fut in finished:
                        rec = fut.result()
                        results[rec.index] = rec
            for fut in pending:
                rec = fut.result()
                results[rec.index] = rec
        except BaseException:
            pool.shutdown(wait=True, cancel_futures=True)
            raise

    records = [results[i] for i in range(len(corpus))]
    config = {"corrector": getattr(corrector, "name", type(corrector).__name__), "prompt": cfg.snapshot()}
    return CorrectionRun(records, config, time.perf_counter() - started)
