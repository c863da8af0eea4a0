"""Primitive recursive map terms, partial maps and loop programs."""

from .core import (
    NAT, ONE, SUCC, ZERO, Bang, Comp, Diag, Id, Incl, Iter, MapTerm, Obj, Pr, Prod,
    ProdMap, ProjL, ProjR, Sub, compose, const, num, pair, type_of,
)
from .errors import (
    DomainError, Indeterminate, NotAPredicate, NotIncluded, RightUniquenessViolation,
    SamplingError, TermTypeError, UnsupportedObject,
)
from .evaluate import SampleSpec, compile_term, eq_on_samples, eval_term, freyd_check
from .partial import (
    Budget, Defined, NoWitnessWithinFuel, PartialMap, apply_partial, compose_partial,
    embed, iterate_partial, mk_partial, partial_equal,
)
from .muwhile import mu, mu_represent, normalize_single_mu, while_loop

__version__ = "0.1.0"
