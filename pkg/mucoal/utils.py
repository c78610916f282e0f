import itertools
import logging
import os
import random
from typing import Hashable, Iterable, Iterator, List, Optional, Tuple

import numpy as np

logger = logging.getLogger(__name__)


class Report:
    """Base for verdict objects; prints its public attributes as `name = value` lines."""

    excluded_attr: Tuple[str, ...] = ()

    def __str__(self) -> str:
        d = self.__dict__
        selected_attr = [key for key in d.keys() if key not in self.excluded_attr and not key.startswith('_')]
        return '\n'.join('{} = {}'.format(key, d[key]) for key in selected_attr)


def set_seed(sd):
    """Set random seed for both Python random and numpy.

    Args:
        sd: Seed value. Can be int, bytes, or None.
    """
    if isinstance(sd, bytes):
        if len(sd) > 0:
            sd = int.from_bytes(sd, byteorder='big') % (2**31)
        else:
            sd = 0

    random.seed(sd)
    if sd is not None:
        np.random.seed(sd)


def check_dir(dir: str):
    if not os.path.exists(dir):
        os.makedirs(dir, exist_ok=True)
        logger.info('A folder called "%s" is created.', dir)


def subsets(items: Iterable, min_size: int = 0, max_size: Optional[int] = None) -> Iterator[frozenset]:
    """All subsets of `items`, smallest first."""
    pool = list(items)
    top = len(pool) if max_size is None else min(max_size, len(pool))
    for size in range(min_size, top + 1):
        for combo in itertools.combinations(pool, size):
            yield frozenset(combo)


def minimal_sets(family: Iterable[frozenset]) -> List[frozenset]:
    """Inclusion-minimal members of `family`, duplicates removed, in increasing size."""
    kept: List[frozenset] = []
    for candidate in sorted(set(family), key=len):
        if not any(k <= candidate for k in kept):
            kept.append(candidate)
    return kept


def compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """Ways to write `total` as an ordered sum of `parts` non-negative integers."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total, )
        return
    for head in range(total + 1):
        for tail in compositions(total - head, parts - 1):
            yield (head, ) + tail


def name_of(point: Hashable) -> str:
    if isinstance(point, str):
        return point
    return repr(point)
