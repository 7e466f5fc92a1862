"""Exact algebra and property classification for finitely supported graph-groupoid operators."""
from .classify import (
    ClassificationReport,
    ClassifyConfig,
    Verdict,
    check_hyponormal_criterion,
    check_hyponormal_numeric,
    check_hyponormal_oracle,
    check_normal,
    check_self_adjoint,
    check_unitary,
    classify,
    is_alternatively_disconnected,
)
from .freegroup import FreeGroupContext, freegroup_classify, parse_free_operator, parse_group_word
from .graph import (
    DirectedGraph,
    Edge,
    GraphFormatError,
    GraphopError,
    ShadowedGraph,
    SignedEdge,
    build_one_vertex_graph,
    parse_graph,
    shadow,
)
from .operators import (
    GraphOperator,
    SupportProfile,
    diagonal_part,
    format_operator,
    identity_operator,
    linear_combine,
    op_adjoint,
    op_multiply,
    parse_operator,
    self_commutator,
    support_profile,
)
from .representation import (
    commutator_gram,
    generator_matrix,
    linear_graph_compression,
    operator_matrix,
    spectral_trace,
)
from .words import EMPTY, Ball, Word, enumerate_ball, inverse, parse_word, product, range_, source, vertex

__version__ = "0.1.0"
