"""Registry for constraint families."""

from scripts.components.constants import ConstraintFamily
from scripts.components.network import NetworkSpec
from scripts.families.base_family import BaseFamily, HiddenTripleFamily
from scripts.families.ci_minors import CIMinorsFamily
from scripts.families.cubic_family import CubicFamily
from scripts.families.nb2_flattening import NB2FlatteningFamily
from scripts.families.quadratic_family import QuadraticFamily
from scripts.families.sextic_family import SexticFamily


class FamilyRegistry:
    """Registry for constraint family types."""

    _families = {
        ConstraintFamily.CI_MINORS: CIMinorsFamily,
        ConstraintFamily.NB2_FLATTENING: NB2FlatteningFamily,
        ConstraintFamily.QUADRATIC_5_1: QuadraticFamily,
        ConstraintFamily.CUBIC_5_2: CubicFamily,
        ConstraintFamily.SEXTIC_5_3: SexticFamily,
    }

    @classmethod
    def create(cls, family: str | ConstraintFamily, net: NetworkSpec, **options) -> BaseFamily:
        """Bind a family to a network; raises ShapeMismatchError if the shape does not fit."""
        try:
            key = ConstraintFamily(str(family.value if isinstance(family, ConstraintFamily) else family).upper())
        except ValueError:
            raise ValueError(f"Unknown constraint family: {family}") from None
        if key not in cls._families:
            raise ValueError(f"No generator registered for family {key.value}")
        return cls._families[key](net, **options)

    @classmethod
    def register(cls, family: ConstraintFamily, family_cls: type[BaseFamily]):
        """Register a custom family generator."""
        cls._families[ConstraintFamily(family)] = family_cls

    @classmethod
    def families(cls) -> list[str]:
        return [family.value for family in cls._families]

    @classmethod
    def recognize(cls, net: NetworkSpec) -> type[HiddenTripleFamily] | None:
        """The hidden-triple family whose model network has the structure of `net`, if any."""
        for family_cls in cls._families.values():
            if issubclass(family_cls, HiddenTripleFamily) and family_cls.matches_model(net):
                return family_cls
        return None
