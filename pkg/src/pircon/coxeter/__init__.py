"""Coxeter groups, Bruhat order, parabolic quotients and twisted identities."""

from .groups import (CoxeterError, CoxeterGroup, DihedralGroup, NotDescent,
                     ReflectionGroup, SymmetricGroup, coxeter_group)
from .intervals import (NotHSpecial, NotMinimalCosetRep, TwistedIdentityPoset,
                        bruhat_interval, bruhat_leq, conjugation_spm,
                        coset_decompose, descents, enumerate_h_special,
                        is_h_special, left_mult_matching, length,
                        parabolic_interval, project_mh, twisted_identities)
from .ring import QSqrt, two_cos_pi_over

__all__ = [
    "CoxeterError", "CoxeterGroup", "DihedralGroup", "NotDescent",
    "ReflectionGroup", "SymmetricGroup", "coxeter_group", "NotHSpecial",
    "NotMinimalCosetRep", "TwistedIdentityPoset", "bruhat_interval",
    "bruhat_leq", "conjugation_spm", "coset_decompose", "descents",
    "enumerate_h_special", "is_h_special", "left_mult_matching", "length",
    "parabolic_interval", "project_mh", "twisted_identities", "QSqrt",
    "two_cos_pi_over",
]
