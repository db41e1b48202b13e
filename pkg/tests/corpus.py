"""Shared, cached test corpora."""

from functools import lru_cache

from flcover.fixtures import algebra_fixtures, bool2, luk3
from flcover.logic import Model
from flcover.representation import canonical_cover_system
from flcover.search import enumerate_algebras


@lru_cache(maxsize=None)
def enumerated(predicate: str, max_size: int = 3) -> tuple:
    return tuple(A for n in range(1, max_size + 1) for A in enumerate_algebras(n, predicate))


def with_fixtures(predicate: str) -> tuple:
    return tuple(algebra_fixtures()) + enumerated(predicate)


@lru_cache(maxsize=None)
def bool2_model() -> Model:
    S = canonical_cover_system(bool2())
    return Model(S, ("u",), {}, {"P": {("u",): {S.index("bot")}}})


@lru_cache(maxsize=None)
def luk3_model() -> Model:
    S = canonical_cover_system(luk3())
    return Model(S, ("u", "w"), {}, {"P": {("u",): S.preorder.up(S.index("h")),
                                           ("w",): S.preorder.up(S.index("1"))}})
