# modules/constructions/__init__.py

from modules.constructions.builders import (
    direct_sum,
    make_heisenberg_h1,
    make_n_n1,
    make_Q2n,
    semidirect_tensor,
)
from modules.constructions.representations import (
    is_faithful,
    is_representation,
    minimal_faithful_action,
    representation_defects,
)
