from .polytope import polytope_blueprint
from .strata import strata_blueprint
from .potential import potential_blueprint
