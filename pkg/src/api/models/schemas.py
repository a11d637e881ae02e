"""
JSON models for rigged configurations and angle representatives
"""

from typing import List

from pydantic import BaseModel, ConfigDict, Field

from src.scattering.angle import AngleRep
from src.scattering.kkr import RiggedConfiguration


class RowModel(BaseModel):
    """One row of a Young diagram with its rigging."""
    model_config = ConfigDict(populate_by_name=True)

    length: int = Field(..., alias="len", ge=1, description="Row length j")
    rig: int = Field(..., description="Rigging")


def _rows(pairs) -> List[RowModel]:
    return [RowModel(length=j, rig=r) for j, r in pairs]


class RiggedConfigurationModel(BaseModel):
    """Rigged configuration with rows in canonical order."""
    L: int = Field(..., ge=1, description="System size")
    rows: List[RowModel] = Field(default_factory=list)

    @classmethod
    def from_domain(cls, rc: RiggedConfiguration) -> "RiggedConfigurationModel":
        return cls(L=rc.L, rows=_rows(rc.rows))

    def to_domain(self) -> RiggedConfiguration:
        rc = RiggedConfiguration(self.L, tuple((row.length, row.rig) for row in self.rows))
        rc.validate()
        return rc

    def dump(self) -> str:
        return self.model_dump_json(by_alias=True)


class AngleRepModel(BaseModel):
    """Angle representative (d, J); `omega` marks a path scattered after applying omega."""
    L: int = Field(..., ge=1, description="System size")
    d: int = Field(0, description="Offset")
    rows: List[RowModel] = Field(default_factory=list)
    omega: bool = Field(False, description="The path had negative weight")

    @classmethod
    def from_domain(cls, a: AngleRep, omega: bool = False) -> "AngleRepModel":
        pairs = sorted(
            ((j, r) for j, window in a.blocks().items() for r in window), reverse=True
        )
        return cls(L=a.L, d=a.d, rows=_rows(pairs), omega=omega)

    def to_domain(self) -> AngleRep:
        blocks = {}
        for row in self.rows:
            blocks.setdefault(row.length, []).append(row.rig)
        return AngleRep.from_blocks(self.L, self.d, blocks)

    def dump(self) -> str:
        """Compact JSON with the `len` aliases; `omega` only when set."""
        return self.model_dump_json(by_alias=True, exclude=None if self.omega else {"omega"})
