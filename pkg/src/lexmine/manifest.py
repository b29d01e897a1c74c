"""Run manifests and atomic file output.

Every CLI command writes a manifest next to its primary output recording
the command name, the resolved configuration, sha256 digests of all input
files, and per-stage counts. Two runs over identical inputs with identical
settings produce byte-identical manifests; the only non-deterministic
record, per-stage wall-clock, goes to a separate ``*.timing.json`` sidecar
so it never breaks reproducibility comparisons.
"""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
from dataclasses import dataclass, field

SCHEMA_VERSION = 1
TOOL_NAME = "lexmine"


def sha256_file(path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for block in iter(lambda: handle.read(1 << 20), b""):
            digest.update(block)
    return digest.hexdigest()


def atomic_write_text(path, text: str):
    """Write via a temp file in the same directory, then rename over the
    target so readers never observe a partial file."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix="~")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp_path, path)
    except BaseException:
        try:
            os.unlink(tmp_path)
        except OSError:
            pass
        raise


def atomic_write_json(path, payload: dict):
    atomic_write_text(path, json.dumps(payload, indent=2, sort_keys=True,
                                       ensure_ascii=False) + "\n")


def manifest_path_for(output_path) -> str:
    return str(output_path) + ".manifest.json"


def timing_path_for(manifest_path) -> str:
    base = str(manifest_path)
    if base.endswith(".manifest.json"):
        base = base[: -len(".manifest.json")]
    return base + ".timing.json"


@dataclass
class RunManifest:
    command: str
    version: str
    config: dict = field(default_factory=dict)
    seed: int | None = None
    inputs: dict = field(default_factory=dict)    # path -> sha256
    counts: dict = field(default_factory=dict)    # stage -> number
    outputs: list[str] = field(default_factory=list)
    timing: dict = field(default_factory=dict)    # stage -> seconds, sidecar only

    def add_input(self, path):
        self.inputs[str(path)] = sha256_file(path)

    def to_dict(self) -> dict:
        payload = {
            "schema_version": SCHEMA_VERSION,
            "tool": TOOL_NAME,
            "version": self.version,
            "command": self.command,
            "config": self.config,
            "inputs": dict(sorted(self.inputs.items())),
            "counts": self.counts,
            "outputs": list(self.outputs),
        }
        if self.seed is not None:
            payload["seed"] = self.seed
        return payload

    def write(self, path):
        atomic_write_json(path, self.to_dict())
        if self.timing:
            atomic_write_json(timing_path_for(path),
                              {"command": self.command, "timing": self.timing})
