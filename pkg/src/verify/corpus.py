"""
Corpus manifest: named groups from builtin constructors or .grp files
"""

from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import yaml
from pydantic import BaseModel, Field, ValidationError, model_validator

from src.core.exceptions import GroupFormatError
from src.perm.builtins import BUILTINS, product
from src.perm.group import GroupHandle, SubgroupRef
from src.perm.grp_format import load_grp, load_sub, parse_subgroup
from src.utils.logging import verify_logger as logger

DEFAULT_MANIFEST = Path(__file__).resolve().parents[2] / "corpus" / "corpus.yaml"


class CorpusEntry(BaseModel):
    """One named corpus group"""
    name: str
    builtin: Optional[str] = None
    params: Union[List[Any], Dict[str, Any]] = Field(default_factory=list)
    factors: List["CorpusEntry"] = Field(default_factory=list)
    file: Optional[str] = None
    order: Optional[int] = None
    subgroups: Dict[str, str] = Field(default_factory=dict)
    separation: Optional[str] = None

    @model_validator(mode="after")
    def check_source(self) -> "CorpusEntry":
        if (self.builtin is None) == (self.file is None):
            raise ValueError(f"entry {self.name!r} needs exactly one of builtin or file")
        if self.builtin is not None and self.builtin != "product" and self.builtin not in BUILTINS:
            raise ValueError(f"entry {self.name!r}: unknown builtin {self.builtin!r}")
        if self.separation is not None and self.separation not in self.subgroups:
            raise ValueError(f"entry {self.name!r}: separation names unknown subgroup {self.separation!r}")
        return self


class CorpusManifest(BaseModel):
    """Ordered list of corpus entries plus the directory relative paths refer to"""
    groups: List[CorpusEntry] = Field(default_factory=list)
    base_dir: Path = Field(default=Path("."), exclude=True)

    @property
    def names(self) -> List[str]:
        return [e.name for e in self.groups]

    def entry(self, name: str) -> CorpusEntry:
        for e in self.groups:
            if e.name == name:
                return e
        raise KeyError(name)


def load_manifest(path: Union[str, Path, None] = None) -> CorpusManifest:
    """
    Read a YAML manifest

    Raises:
        GroupFormatError: unreadable file, bad YAML or invalid entries
    """
    path = Path(path) if path is not None else DEFAULT_MANIFEST
    try:
        data = yaml.safe_load(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise GroupFormatError(f"cannot read manifest {path}: {e}") from e
    except yaml.YAMLError as e:
        raise GroupFormatError(f"manifest {path} is not valid YAML: {e}") from e
    if data is None:
        data = {}
    if isinstance(data, list):
        data = {"groups": data}
    try:
        manifest = CorpusManifest.model_validate(data)
    except ValidationError as e:
        raise GroupFormatError(f"invalid manifest {path}: {e}") from e
    manifest.base_dir = path.parent
    names = manifest.names
    if len(set(names)) != len(names):
        raise GroupFormatError(f"manifest {path} repeats a group name")
    return manifest


def _construct(entry: CorpusEntry, base_dir: Path) -> GroupHandle:
    if entry.file is not None:
        return load_grp(base_dir / entry.file)
    if entry.builtin == "product":
        return product([_construct(f, base_dir) for f in entry.factors])
    constructor = BUILTINS[entry.builtin]
    try:
        if isinstance(entry.params, dict):
            return constructor(**entry.params)
        return constructor(*entry.params)
    except TypeError as e:
        raise GroupFormatError(f"bad parameters for {entry.builtin}: {e}") from e


def build_group(entry: CorpusEntry, base_dir: Path = Path(".")) -> GroupHandle:
    """
    Construct the group of an entry and check its stated order

    Raises:
        GroupFormatError: bad parameters, unreadable file or order mismatch
    """
    G = _construct(entry, base_dir)
    G.name = entry.name
    if entry.order is not None and G.order != entry.order:
        raise GroupFormatError(f"{entry.name} has order {G.order}, manifest says {entry.order}")
    logger.debug(f"Loaded {entry.name} of order {G.order} on {G.degree} points")
    return G


def entry_subgroup(G: GroupHandle, entry: CorpusEntry, key: str, base_dir: Path = Path(".")) -> SubgroupRef:
    """A named subgroup of an entry: inline generators or a .sub file path"""
    text = entry.subgroups[key]
    if text.strip().endswith(".sub"):
        return load_sub(G, base_dir / text.strip())
    return parse_subgroup(G, text)


CorpusEntry.model_rebuild()
