# modules/mu_family/__init__.py

from modules.mu_family.classification import (
    Family,
    NormalForm,
    load_published_catalogue,
    mu4_catalogue,
    mu4_is_isomorphic,
    mu4_normalize,
    mu4_signature,
)
from modules.mu_family.general import (
    GeneralParams,
    bruteforce_constraint_oracle,
    constraint_report,
    constraint_residuals,
    general_table,
    inner_bracket_closed_form,
)
from modules.mu_family.mu4 import (
    MuParams,
    MuTransform,
    mu4_as_general,
    mu4_compose,
    mu4_display_residuals,
    mu4_induced_basis_change,
    mu4_inverse,
    mu4_table,
    mu4_transform_action,
)
from modules.mu_family.q_coeff import q_coeff, q_coeff_recursive
