"""
Deterministic instance families.
"""
import hashlib

import numpy as np

from core.errors import InputError

__all__ = [
    "InstanceFamilyBase",
    "stream_key",
    "random_stream",
    "check_seed"
]

MAX_SEED = 2 ** 64


def check_seed(seed):
    if int(seed) != seed or not 0 <= seed < MAX_SEED:
        raise InputError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
    return int(seed)


def stream_key(name):
    """First 8 bytes, little endian, of sha256(name)"""
    return int.from_bytes(hashlib.sha256(name.encode("utf-8")).digest()[:8], "little")


def random_stream(seed, name):
    """
    PCG64 generator for one named field of an instance. Each field owns its
    stream, so adding a field never shifts the values of another.
    """
    sequence = np.random.SeedSequence([check_seed(seed), stream_key(name)])
    return np.random.Generator(np.random.PCG64(sequence))


class InstanceFamilyBase(object):
    """
    A recipe turning (n, seed) into a :class:`core.instance.Instance`.
    """
    name = None

    def instance(self, n, seed):
        """
        :param n: problem size
        :param seed: unsigned 64-bit seed
        :return: :class:`core.instance.Instance`
        """
        return self._get_instance(int(n), check_seed(seed))

    def instances(self, sizes, reps, base_seed=0):
        """
        Yields (n, rep, instance) for every size and repetition, in that order.
        The seed of each instance is derived from (base_seed, n, rep).
        """
        for n in sizes:
            for rep in range(reps):
                yield int(n), rep, self.instance(n, self.derive_seed(base_seed, n, rep))

    @staticmethod
    def derive_seed(base_seed, n, rep):
        sequence = np.random.SeedSequence([check_seed(base_seed), int(n), int(rep)])
        return int(sequence.generate_state(1, dtype=np.uint64)[0])

    def _get_instance(self, n, seed):
        raise NotImplementedError
