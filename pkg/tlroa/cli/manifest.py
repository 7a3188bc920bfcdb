import dataclasses
import os
import typing
from tlroa._version import __version__
from tlroa.jsonio   import SCHEMA_VERSION, dump_document

__all__ = [
    'RunManifest',
    'OutputDir'
]

@dataclasses.dataclass
class RunManifest:
    """Record of one command run: what was asked, what was run and what was written."""

    command: str
    config_hash: str
    overrides: typing.List[str] = dataclasses.field(default_factory=list)
    wall_time: typing.Optional[float] = None
    simulation_count: int = 0
    version: str = __version__
    outputs: typing.List[str] = dataclasses.field(default_factory=list)

    def to_document(self) -> typing.Dict[str, typing.Any]:
        document = dataclasses.asdict(self)
        document['schema_version'] = SCHEMA_VERSION
        document['kind']           = 'manifest'

        return document

class OutputDir:
    """Directory receiving a command's files; every file opened through it is listed in the manifest."""

    MANIFEST = 'manifest.json'

    def __init__(self, path: str, manifest: RunManifest):
        self.path     = path
        self.manifest = manifest

    def file(self, name: str) -> str:
        """Full path of output `name`, recorded in the manifest."""

        os.makedirs(self.path, exist_ok=True)

        if name not in self.manifest.outputs:
            self.manifest.outputs.append(name)

        return os.path.join(self.path, name)

    def open(self, name: str, mode: str = 'w'):
        return open(self.file(name), mode, newline='' if 'b' not in mode else None)

    def write_manifest(self) -> str:
        os.makedirs(self.path, exist_ok=True)
        path = os.path.join(self.path, self.MANIFEST)

        with open(path, 'w', newline='') as file:
            dump_document(file, self.manifest.to_document())

        return path
