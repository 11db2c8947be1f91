"""Estimator interface so clique decompositions compose with scikit-learn tooling."""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .decomposition import DecompositionStats, count_linking_constraints, decompose, realify_decomposition
from .graph import SparsityGraph
from .merge import DEFAULT_SMAX, merge_rounds
from .network import NetworkTopology
from .ordering import OrderingStrategy, chordal_extension
from .patterns import build_complex_pattern, realify_extension, realify_graph


def check_pattern(X) -> SparsityGraph:
    """Validate a sparsity pattern and return it as a :class:`SparsityGraph`.

    Accepts a graph, a topology (its complex pattern is returned) or a
    square dense/sparse matrix whose off-diagonal nonzeros are the edges;
    the matrix pattern is symmetrized.
    """
    if isinstance(X, SparsityGraph):
        return X
    if isinstance(X, NetworkTopology):
        return build_complex_pattern(X)
    A = sp.coo_matrix(X) if not sp.issparse(X) else X.tocoo()
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"pattern must be a square matrix, got shape {A.shape}")
    mask = (A.row != A.col) & (A.data != 0)
    return SparsityGraph.from_edges(A.shape[0], zip(A.row[mask].tolist(), A.col[mask].tolist()))


class CliqueDecomposer(BaseEstimator, TransformerMixin):
    """Chordal clique decomposition of a sparsity pattern.

    Parameters
    ----------
    side : {"complex", "real"}
        ``"complex"`` treats the pattern as complex buses, decomposes it and
        doubles the cliques; ``"real"`` decomposes the pattern as given
        (topologies are realified first).
    ordering : str
        ``"min_degree"``, ``"amd"``, ``"random"`` or ``"max_degree"``.
    seed : int, optional
        Seed of the random ordering.
    s_max : int
        Size cap for merged blocks.
    merge_rounds : int
        Number of clique combination rounds after the decomposition.

    Attributes
    ----------
    extension_ : ChordalExtension
        Chordal extension of the pattern in the side's own variables.
    cliques_ : CliqueList
        Blocks in real variables after merging.
    clique_tree_ : CliqueTree
    stats_ : DecompositionStats
    merge_history_ : list of RoundStats
    n_features_in_ : int
        Number of real variables; the size of matrices accepted by transform.
    """

    def __init__(self, side="complex", ordering="min_degree", seed=None, s_max=DEFAULT_SMAX, merge_rounds=0):
        self.side = side
        self.ordering = ordering
        self.seed = seed
        self.s_max = s_max
        self.merge_rounds = merge_rounds

    def fit(self, X, y=None):
        if self.side not in ("complex", "real"):
            raise ValueError(f"side must be 'complex' or 'real', got {self.side!r}")
        strategy = OrderingStrategy.parse(self.ordering, seed=self.seed)
        g = check_pattern(X)
        if self.side == "real" and isinstance(X, NetworkTopology):
            g = realify_graph(g)
        self.extension_ = chordal_extension(g, strategy)
        cliques, tree = decompose(self.extension_)
        if self.side == "complex":
            cliques, tree = realify_decomposition(cliques, tree)
            fill = realify_extension(self.extension_).fill_count
            self.n_features_in_ = 2 * g.node_count
        else:
            fill = self.extension_.fill_count
            self.n_features_in_ = g.node_count
        cliques, tree, history = merge_rounds(cliques, tree, self.s_max, self.merge_rounds)
        self.cliques_ = cliques
        self.clique_tree_ = tree
        self.merge_history_ = history
        self.stats_ = DecompositionStats(
            nc=len(cliques),
            nlc=count_linking_constraints(tree),
            max_clique_size=cliques.max_size(),
            fill_count=fill,
        )
        return self

    @property
    def blocks_(self):
        check_is_fitted(self, "cliques_")
        return [np.array(sorted(c), dtype=np.intp) for c in self.cliques_]

    def transform(self, X):
        """Extract the principal submatrix of ``X`` for every block."""
        check_is_fitted(self, "cliques_")
        M = X.toarray() if sp.issparse(X) else np.asarray(X)
        if M.shape != (self.n_features_in_, self.n_features_in_):
            raise ValueError(
                f"expected a {self.n_features_in_}x{self.n_features_in_} matrix, got shape {M.shape}"
            )
        return [M[np.ix_(idx, idx)] for idx in self.blocks_]
