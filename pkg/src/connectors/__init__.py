"""Distributions of adjacent-pair connector statistics on k-ary words."""
from .algebra import BiPoly, Poly, RationalGF, derivative_q_at_1, series_coefficients, substitute_b
from .genfunc import gkcon_gf, kcon_gf, kcon_total_gf, transfer_distribution
from .linsys import build_system_matrix, cramer_numerators, detA_closed_form, poly_det
from .totals import floor_sum_identity, gkcon_total, kcon_total
from .words import ConnectorStat, Word, brute_distribution, enumerate_words, gkcon, kcon, stat_count

__version__ = "0.1.0"
