# modules/fock/__init__.py

from modules.fock.fock_module import (
    FockAlgebra,
    IdealDefect,
    WindowedReport,
    build_FR,
    build_FR_direct_sum,
    check_leibniz_windowed,
    fock_action,
    fock_to_n_n1_basis_change,
    monomial_ideal,
    monomial_ideal_defects,
    windowed_leibniz_report,
)
from modules.fock.poly_space import TruncatedPolySpace
