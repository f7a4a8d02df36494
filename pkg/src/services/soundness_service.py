"""
Soundness fuzzing: accepted random derivations checked against every small model
"""
import random
import time
from collections import defaultdict
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict

from src.config.logging_config import get_logger
from src.models.Formula_Model import Formula
from src.models.Kripke_Model import KripkeModel
from src.services.proof_service import check, random_derivation
from src.services.semantics_service import ForcingEvaluator, enumerate_models
from src.services.syntax_service import atoms_of, print_formula, random_formula
from src.utils.errors import HenkinInvariantError

# Get logger for this module
logger = get_logger(__name__)


class SoundnessViolation(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    seed: int
    context: FrozenSet[Formula]
    conclusion: Formula
    model: KripkeModel
    world: int


class SoundnessReport(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    derivations: int
    models_checked: int
    violations: List[SoundnessViolation]

    @property
    def ok(self) -> bool:
        return not self.violations


def random_context(seed: int, atoms: Sequence[int]) -> FrozenSet[Formula]:
    rng = random.Random(seed ^ 0x5EED)
    return frozenset(random_formula(rng, 3, atoms) for _ in range(rng.randint(0, 2)))


def fuzz_soundness(seeds: int, depth: int, max_worlds: int, atoms: Sequence[int] = (0, 1, 2),
                   max_violations: Optional[int] = 10) -> SoundnessReport:
    """
    Check "context forced implies conclusion forced" for random accepted derivations

    Derivations are grouped by the atoms they mention; each group is checked
    on enumerate_models(max_worlds, those atoms) with forcing memoised per
    model across the group.
    """
    start_time = time.time()
    groups: Dict[Tuple[int, ...], List[Tuple[int, FrozenSet[Formula], Formula]]] = defaultdict(list)
    for seed in range(seeds):
        ctx = random_context(seed, atoms)
        d, p = random_derivation(ctx, depth, seed, atoms)
        if not check(d, ctx, p).accepted:
            raise HenkinInvariantError(f"random derivation for seed {seed} is not accepted")
        groups[tuple(sorted(atoms_of(p, *ctx)))].append((seed, ctx, p))

    violations: List[SoundnessViolation] = []
    models_checked = 0
    for group_atoms, queries in sorted(groups.items()):
        for model in enumerate_models(max_worlds, group_atoms):
            models_checked += 1
            evaluator = ForcingEvaluator(model)
            for seed, ctx, p in queries:
                for w in model.worlds:
                    if evaluator.forces_ctx(w, ctx) and not evaluator.forces(w, p):
                        logger.error(f"Soundness violation for seed {seed}: {print_formula(p)} at world {w}")
                        violations.append(SoundnessViolation(seed=seed, context=ctx, conclusion=p, model=model, world=w))
                        if max_violations is not None and len(violations) >= max_violations:
                            return SoundnessReport(derivations=seeds, models_checked=models_checked, violations=violations)

    logger.info(f"Soundness fuzzing checked {seeds} derivations on {models_checked} models",
                extra={'execution_time': (time.time() - start_time) * 1000})
    return SoundnessReport(derivations=seeds, models_checked=models_checked, violations=violations)
