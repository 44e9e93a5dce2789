from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import yaml

from src.check_manager import CheckManager, SuiteReport
from src.cobordism.cobordism import AuditReport, low_degree_index_audit, map_table
from src.geometry.orbit_geometry import PullbackSampleSpec, verify_oneform_pullback, verify_orbit
from src.homology.homology import h1_mapping_torus, lefschetz_constants
from src.index.ech_index import index_report, q_tau_pair, q_tau_total
from src.index.energy import is_admissible_class, orbit_energy
from src.oracle.intersection_oracle import oracle_sweep
from src.orbits.grammar import parse_orbitset
from src.orbits.orbit_model import OrbitSet, enumerate_generators, farey_slopes
from src.utils.errors import DomainError
from src.utils.logging import get_logger
from src.validator.data_model import RunConfig, SelfCheckRanges
from src.validator.report_model import VerificationReport


def load_yaml(file_path: Path) -> dict:
    with open(file_path, "r", encoding="utf-8") as f:
        data = yaml.safe_load(f) or {}
    if not isinstance(data, dict):
        raise DomainError(f"Configuration file {file_path} must hold a mapping, got {type(data).__name__}.")
    return data


def parse_slope(text: str) -> Tuple[int, int]:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise DomainError(f"Cannot read slope '{text}': {e}") from e
    if "/" in text:
        p, q = (int(part) for part in text.split("/"))
        if Fraction(p, q).denominator != q:
            raise DomainError(f"Slope {text} is not in lowest terms.")
    return value.numerator, value.denominator


class CommandRunner:
    """
    One method per subcommand. Row commands return lists of dicts, report
    commands return pydantic models; exit codes are decided by the caller.
    """

    def __init__(self, config: RunConfig):
        self.logger = get_logger(__name__)
        self.config = config

    def _orbitsets(self, set_text: Optional[str]) -> List[OrbitSet]:
        if set_text is not None:
            return [parse_orbitset(set_text)]
        return enumerate_generators(self.config.degree, self.config.morse(), self.config.enumeration_cap)

    def generators(self) -> List[Dict]:
        self.logger.info(f"Enumerating generators of degree {self.config.degree}...")
        return [
            {"orbit_set": str(alpha), "degree": alpha.degree, "hyperbolic": alpha.hyperbolic_count()}
            for alpha in self._orbitsets(None)
        ]

    def index(self, set_text: Optional[str] = None, fiber_mult: Optional[int] = None) -> List[Dict]:
        # fibre shifts are the only place the profile enters
        profile = self.config.profile() if fiber_mult is not None else None
        m = fiber_mult or 0
        return [index_report(alpha, m, profile) for alpha in self._orbitsets(set_text)]

    def qtau(self, set_text: Optional[str] = None, max_q: Optional[int] = None, verify_oracle: bool = False) -> List[Dict]:
        if set_text is not None:
            alpha = parse_orbitset(set_text)
            return [{"orbit_set": str(alpha), "q_tau": q_tau_total(alpha)}]
        order = max_q if max_q is not None else self.config.degree
        if verify_oracle:
            self.logger.info(f"Sweeping the intersection oracle up to q={order}...")
            return oracle_sweep(order)
        slopes = farey_slopes(order)
        return [
            {"p": s.numerator, "q": s.denominator, "p2": t.numerator, "q2": t.denominator,
             "q_tau": q_tau_pair(s.numerator, s.denominator, t.numerator, t.denominator)}
            for i, s in enumerate(slopes)
            for t in slopes[: i + 1]
        ]

    def energy(self, set_text: Optional[str] = None, fiber_mult: Optional[int] = None) -> List[Dict]:
        profile = self.config.profile() if fiber_mult is not None else None
        m = fiber_mult or 0
        rows = []
        for alpha in self._orbitsets(set_text):
            energy = sum(mult * orbit_energy(kind, self.config.annulus_half_width) for kind, mult in alpha)
            row = {"orbit_set": str(alpha), "energy": energy, "fiber_mult": m, "total": energy}
            if profile is not None:
                verdict = is_admissible_class(alpha, m, profile)
                row.update(total=verdict.energy, admissible=verdict.admissible)
            rows.append(row)
        return rows

    def verify_orbit(self, slope: str, y0: float = 0.0, samples: Optional[int] = None, tol: Optional[float] = None) -> VerificationReport:
        p, q = parse_slope(slope)
        tol = tol if tol is not None else self.config.orbit_tol
        return verify_orbit(p, q, y0, samples, tol, half_width=self.config.annulus_half_width)

    def verify_pullback(
        self,
        samples: Optional[int] = None,
        step: Optional[float] = None,
        direction: str = "random",
        seed: int = 0,
        tol: Optional[float] = None,
    ) -> VerificationReport:
        defaults = PullbackSampleSpec()
        sampling = PullbackSampleSpec(
            n_points=samples if samples is not None else defaults.n_points,
            seed=seed,
            step=step if step is not None else defaults.step,
            direction=direction,
        )
        return verify_oneform_pullback(sampling, tol if tol is not None else self.config.pullback_tol)

    def homology(self) -> Dict:
        genus = self.config.genus
        return {
            "genus": genus,
            "H1(Y)": h1_mapping_torus(genus).to_dict(),
            **{name: constant.to_dict() for name, constant in lefschetz_constants(genus).items()},
        }

    def cobordism(self) -> List[Dict]:
        profile = self.config.profile()
        self.logger.info(f"Evaluating the cobordism map at Q={profile.degree_bound}, g(F)={profile.fiber_genus}...")
        return map_table(profile, self.config.morse(), self.config.enumeration_cap)

    def audit(self, max_m: int = 3) -> AuditReport:
        return low_degree_index_audit(self.config.profile(), self.config.morse(), max_m)

    def selfcheck(self, ranges_path: Optional[Path] = None, small: bool = False) -> SuiteReport:
        if ranges_path is not None:
            manager = CheckManager.from_yaml(ranges_path)
        else:
            manager = CheckManager(SelfCheckRanges.small() if small else SelfCheckRanges())
        return manager.run_all()
