from pathlib import Path
from typing import Dict, List, Mapping, Optional

import yaml
from pydantic import BaseModel, computed_field

from src.checks.base_check import BaseCheck, CheckSummary
from src.checks.cobordism_checks import CobordismCheck, CurveClassificationCheck
from src.checks.energy_check import EnergyCheck
from src.checks.geometry_checks import GeometryCheck, ProfileCheck
from src.checks.homology_check import HomologyCheck
from src.checks.index_checks import EnumerationCheck, IndexAgreementCheck, NonnegativityCheck, ShiftLinearityCheck
from src.checks.oracle_check import OracleCheck
from src.index.ech_index import CZ_TABLE
from src.orbits.orbit_model import OrbitFamily
from src.utils.logging import get_logger
from src.validator.data_model import SelfCheckRanges


class SuiteReport(BaseModel):
    ranges: SelfCheckRanges
    checks: List[CheckSummary]

    @computed_field
    @property
    def passed(self) -> bool:
        return all(check.ok for check in self.checks)

    @computed_field
    @property
    def total_failed(self) -> int:
        return sum(check.failed for check in self.checks)

    def rows(self) -> List[Dict]:
        return [
            {"check": c.name, "passed": c.passed, "skipped": c.skipped, "failed": c.failed, "ok": c.ok}
            for c in self.checks
        ]


class CheckManager:

    def __init__(self, ranges: SelfCheckRanges = SelfCheckRanges(), cz_table: Mapping[OrbitFamily, int] = CZ_TABLE):
        self.logger = get_logger(__name__)
        self.ranges = ranges
        self.checks: Dict[str, BaseCheck] = {
            "twist_profile": ProfileCheck(ranges),
            "enumeration": EnumerationCheck(ranges),
            "index_agreement": IndexAgreementCheck(ranges, cz_table),
            "index_nonnegativity": NonnegativityCheck(ranges),
            "shift_linearity": ShiftLinearityCheck(ranges),
            "intersection_oracle": OracleCheck(ranges),
            "orbit_geometry": GeometryCheck(ranges),
            "energy": EnergyCheck(ranges),
            "homology": HomologyCheck(ranges),
            "cobordism": CobordismCheck(ranges),
            "curve_classification": CurveClassificationCheck(ranges),
        }

    @classmethod
    def from_yaml(cls, file_path: Path) -> "CheckManager":
        return cls(SelfCheckRanges(**cls._load_yaml(file_path)))

    def run_all(self, only: Optional[List[str]] = None) -> SuiteReport:
        summaries = []
        for name, check in self.checks.items():
            if only and name not in only:
                continue
            self.logger.info(f"Checking {name}...")
            check.reset()
            check.run()
            summary = check.summary()
            if summary.ok:
                self.logger.success(f"{name}: {summary.passed} passed, {summary.skipped} skipped")
            else:
                self.logger.error(f"{name}: {summary.failed} failed")
            summaries.append(summary)
        return SuiteReport(ranges=self.ranges, checks=summaries)

    @staticmethod
    def _load_yaml(file_path: Path) -> dict:
        with open(file_path, "r", encoding="utf-8") as f:
            return yaml.safe_load(f) or {}


def run_all(ranges: SelfCheckRanges = SelfCheckRanges()) -> SuiteReport:
    return CheckManager(ranges).run_all()
