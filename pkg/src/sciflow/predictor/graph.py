"""Symmetric normalization of the paper citation graph."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from ..corpus.model import Corpus


@dataclass(frozen=True)
class NormalizedAdjacency:
    """A_hat = D^{-1/2} (A + I) D^{-1/2} with D_ii = 1 + deg(i)."""

    matrix: sp.csr_matrix
    index: dict[str, int]  # paper id -> row


def normalize_adjacency(view: Corpus) -> NormalizedAdjacency:
    paper_ids = sorted(view.papers)
    index = {pid: i for i, pid in enumerate(paper_ids)}
    n = len(paper_ids)

    # Citations are treated as undirected; duplicates collapse to one link.
    pairs: set[tuple[int, int]] = set()
    for citing, cited in view.paper_citations:
        a, b = index[citing], index[cited]
        if a != b:
            pairs.add((min(a, b), max(a, b)))

    rows: list[int] = []
    cols: list[int] = []
    for a, b in pairs:
        rows.extend((a, b))
        cols.extend((b, a))
    data = np.ones(len(rows), dtype=np.float64)
    adj = sp.csr_matrix((data, (rows, cols)), shape=(n, n))

    degree = np.asarray(adj.sum(axis=1)).ravel()
    inv_sqrt = 1.0 / np.sqrt(1.0 + degree)
    scale = sp.diags(inv_sqrt)
    a_hat = scale @ (adj + sp.identity(n, format="csr")) @ scale
    return NormalizedAdjacency(matrix=a_hat.tocsr(), index=index)
