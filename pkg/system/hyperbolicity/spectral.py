"""Joint spectral radius bounds by exhaustive products up to a length."""
import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from config import Config
from core.errors import BudgetExceeded
from system.explorer.words import Word, word_count

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SpectralRow:
    length: int
    min_norm_root: float
    min_norm_word: Word
    min_radius_root: float
    min_radius_word: Word


@dataclass(frozen=True)
class SpectralEstimate:
    rows: Tuple[SpectralRow, ...]

    @property
    def upper_bound(self):
        """Tightest upper bound on the lower spectral radius from the norm rows.

        min_{|w|=n} ||A_w|| is submultiplicative in n, so the lower spectral
        radius is the infimum of the row values and each row bounds it above.
        """
        return min(row.min_norm_root for row in self.rows)

    @property
    def periodic_upper(self):
        return min(row.min_radius_root for row in self.rows)


def _decode(index, length, size):
    letters = []
    for _ in range(length):
        index, digit = divmod(index, size)
        letters.append(digit + 1)
    return Word(tuple(reversed(letters)))


def lower_spectral_estimate(maps, max_len=Config.SPECTRAL_DEPTH, node_budget=Config.NODE_BUDGET):
    total = word_count(len(maps), max_len)
    if total > node_budget:
        raise BudgetExceeded(f'{total} products exceed budget {node_budget}')
    generators = np.array([g.matrix() for g in maps])
    size = len(maps)
    level = generators.copy()
    rows = []
    for length in range(1, max_len + 1):
        if length > 1:
            # products ordered prefix-major so indices decode as words
            level = np.einsum('nij,kjl->knil', generators, level).reshape(-1, 2, 2)
        norms = np.maximum(np.linalg.norm(level, ord=2, axis=(1, 2)), 1.0)
        roots = norms ** (1.0 / length)
        traces = np.abs(level[:, 0, 0] + level[:, 1, 1])
        radii = np.where(traces > 2.0, (traces + np.sqrt(np.maximum(traces ** 2 - 4.0, 0.0))) / 2.0, 1.0)
        radius_roots = radii ** (1.0 / length)
        k, r = int(np.argmin(roots)), int(np.argmin(radius_roots))
        rows.append(SpectralRow(length, float(roots[k]), _decode(k, length, size),
                                float(radius_roots[r]), _decode(r, length, size)))
        logger.debug(f'Length {length}: min ||A_w||^(1/n) = {roots[k]:.6f}')
    return SpectralEstimate(tuple(rows))
