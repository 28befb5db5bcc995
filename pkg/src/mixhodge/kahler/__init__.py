"""Kähler packages, the SL2-parametric operators and the Archimedean monodromy."""
from .fixtures import SHIPPED, package_by_name
from .monodromy import MonodromyError, monodromy, pi4_structure, restrict_to_S, transfer_gamma_i, transfer_gamma_p
from .package import KahlerPackage, PackageError, green, two_types_family, validate_package
from .twisted import formality_zigzag
