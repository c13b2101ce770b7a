"""Direct products of permutation groups on the disjoint union of their domains.

A product element is stored sparsely as a map from factor index to that
factor's component; missing indices mean the identity.  Flattening embeds
the tuple as a single permutation of the combined domain, which lets the
stabilizer-chain kernel work on subgroups of products unchanged.
"""

from __future__ import annotations

from .errors import InputError
from .groups import PermGroup
from .perms import Permutation


class DirectProduct:
    """Context for a finite ordered list of factor groups."""

    def __init__(self, factors):
        factors = tuple(factors)
        if not factors:
            raise InputError("direct product needs at least one factor")
        self.factors = factors
        self.offsets = []
        total = 0
        for f in factors:
            self.offsets.append(total)
            total += f.degree
        self.degree = total

    def embed(self, j: int, p: Permutation) -> Permutation:
        """The factor-j element p as a permutation of the combined domain."""
        if p.degree != self.factors[j].degree:
            raise InputError("component degree mismatch")
        images = list(range(self.degree))
        off = self.offsets[j]
        for i, im in enumerate(p.images):
            images[off + i] = off + im
        return Permutation(images)

    def project(self, g: Permutation, j: int) -> Permutation:
        """Component of a block-preserving permutation in factor j."""
        off = self.offsets[j]
        deg = self.factors[j].degree
        block = g.images[off:off + deg]
        if any(not off <= im < off + deg for im in block):
            raise InputError("permutation does not preserve the factor blocks")
        return Permutation(tuple(im - off for im in block))

    def element(self, components: dict[int, Permutation]) -> ProductElement:
        return ProductElement(self, components)

    def identity_element(self) -> ProductElement:
        return ProductElement(self, {})

    def from_flat(self, g: Permutation) -> ProductElement:
        comps = {}
        for j in range(len(self.factors)):
            p = self.project(g, j)
            if not p.is_identity():
                comps[j] = p
        return ProductElement(self, comps)

    def subgroup(self, elements) -> PermGroup:
        """Group generated by product elements, on the combined domain."""
        gens = [e.flat() if isinstance(e, ProductElement) else e for e in elements]
        return PermGroup(self.degree, gens)

    def full_group(self) -> PermGroup:
        gens = []
        for j, f in enumerate(self.factors):
            gens.extend(self.embed(j, g) for g in f.generators)
        return PermGroup(self.degree, gens)

    def projection_of(self, H: PermGroup, j: int) -> PermGroup:
        """Image of a subgroup of the product in factor j."""
        return PermGroup(
            self.factors[j].degree,
            [self.project(g, j) for g in H.generators],
        )


def direct_product(factors) -> DirectProduct:
    """Product context over an ordered factor list."""
    return DirectProduct(factors)


class ProductElement:
    """Sparse tuple over the factors of a DirectProduct."""

    __slots__ = ("product", "components")

    def __init__(self, product: DirectProduct, components: dict[int, Permutation]):
        comps = {}
        for j, p in components.items():
            if not 0 <= j < len(product.factors):
                raise InputError(f"no factor with index {j}")
            if p.degree != product.factors[j].degree:
                raise InputError("component degree mismatch")
            if not p.is_identity():
                comps[j] = p
        self.product = product
        self.components = comps

    def component(self, j: int) -> Permutation:
        p = self.components.get(j)
        if p is None:
            return Permutation.identity(self.product.factors[j].degree)
        return p

    def __mul__(self, other: ProductElement) -> ProductElement:
        comps = {}
        for j in set(self.components) | set(other.components):
            comps[j] = self.component(j) * other.component(j)
        return ProductElement(self.product, comps)

    def inverse(self) -> ProductElement:
        return ProductElement(
            self.product, {j: p.inverse() for j, p in self.components.items()}
        )

    def conjugate(self, by: ProductElement) -> ProductElement:
        return by.inverse() * self * by

    def is_identity(self) -> bool:
        return not self.components

    def flat(self) -> Permutation:
        images = list(range(self.product.degree))
        for j, p in self.components.items():
            off = self.product.offsets[j]
            for i, im in enumerate(p.images):
                images[off + i] = off + im
        return Permutation(images)

    def __eq__(self, other):
        return (
            isinstance(other, ProductElement)
            and self.product is other.product
            and self.components == other.components
        )

    def __hash__(self):
        return hash(frozenset(self.components.items()))

    def __repr__(self):
        return f"ProductElement({self.components!r})"
