"""
Run Manifest

Everything that determines a run's output files: command, resolved
parameters, seed, sample count, input digests and tool version. The
output directory and worker count are left out; neither changes results.
"""

from dataclasses import dataclass
from pathlib import Path

from django.conf import settings

from .utils import sha256_file


@dataclass(frozen=True)
class InputDigest:
    role: str
    file: str
    sha256: str

    @classmethod
    def of(cls, role, path):
        return cls(role=role, file=Path(path).name, sha256=sha256_file(path))


@dataclass(frozen=True)
class RunManifest:
    command: str
    parameters: dict
    seed: int | None
    samples: int | None
    inputs: tuple
    version: str

    @classmethod
    def build(cls, command, parameters, seed=None, samples=None, input_paths=None):
        inputs = tuple(
            InputDigest.of(role, path) for role, path in sorted((input_paths or {}).items())
        )
        return cls(
            command=command,
            parameters=dict(sorted(parameters.items())),
            seed=seed,
            samples=samples,
            inputs=inputs,
            version=settings.CARBON['VERSION'],
        )

    def to_data(self):
        return {
            'command': self.command,
            'parameters': self.parameters,
            'seed': self.seed,
            'samples': self.samples,
            'inputs': [
                {'role': digest.role, 'file': digest.file, 'sha256': digest.sha256}
                for digest in self.inputs
            ],
            'version': self.version,
        }
