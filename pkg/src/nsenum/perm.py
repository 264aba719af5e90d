"""Permutations of the four vertex labels of a tetrahedron."""

from __future__ import annotations

import itertools

_IDENTITY = (0, 1, 2, 3)


class Perm4:
    """A bijection of the vertex labels {0, 1, 2, 3}.

    Every face gluing carries one of these, recording how the vertex
    labels of the source tetrahedron land on the target tetrahedron.
    Composition works like function application: ``(p * q)[i] == p[q[i]]``.
    """

    __slots__ = ("_images",)

    def __init__(self, images):
        if isinstance(images, str):
            images = tuple(int(c) for c in images)
        else:
            images = tuple(images)
        if sorted(images) != [0, 1, 2, 3]:
            raise ValueError(f"not a permutation of {{0,1,2,3}}: {images!r}")
        self._images = images

    @property
    def images(self) -> tuple[int, int, int, int]:
        return self._images

    def __getitem__(self, label: int) -> int:
        return self._images[label]

    def __mul__(self, other: "Perm4") -> "Perm4":
        o = other._images
        s = self._images
        return Perm4((s[o[0]], s[o[1]], s[o[2]], s[o[3]]))

    def inverse(self) -> "Perm4":
        inv = [0, 0, 0, 0]
        for i, img in enumerate(self._images):
            inv[img] = i
        return Perm4(inv)

    def sign(self) -> int:
        """+1 for an even permutation, -1 for an odd one."""
        im = self._images
        inversions = sum(
            1 for i in range(4) for j in range(i + 1, 4) if im[i] > im[j]
        )
        return -1 if inversions % 2 else 1

    def is_identity(self) -> bool:
        return self._images == _IDENTITY

    def string(self) -> str:
        """Four-character form: character ``j`` is the image of label ``j``."""
        return "".join(str(v) for v in self._images)

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm4) and self._images == other._images

    def __hash__(self) -> int:
        return hash(self._images)

    def __repr__(self) -> str:
        return f"Perm4({self.string()!r})"

    @staticmethod
    def identity() -> "Perm4":
        return _ID_PERM

    @staticmethod
    def all() -> tuple["Perm4", ...]:
        """All 24 permutations, in lexicographic order of their images."""
        return _ALL_PERMS


_ID_PERM = Perm4(_IDENTITY)
_ALL_PERMS = tuple(Perm4(p) for p in itertools.permutations(range(4)))
