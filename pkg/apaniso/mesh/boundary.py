"""
@file
@brief Classification of the boundary dual nodes by the sign of
:math:`b \\cdot \\nu`.
"""
import numpy
import pandas


INFLOW = 'inflow'
OUTFLOW = 'outflow'
TANGENT = 'tangent'


def outward_normals(mesh):
    """
    Computes the outward unit normal at every boundary dual node.
    Corners use the average of the two adjacent normals, renormalized.

    @param      mesh        @see cl Mesh
    @return                 indices *(i, j)* as an array of shape *(k, 2)*,
                            normals as an array of shape *(k, 2)*
    """
    nx, ny = mesh.nx, mesh.ny
    ii, jj = numpy.nonzero(mesh.boundary_mask())
    normals = numpy.zeros((ii.shape[0], 2))
    normals[ii == 0, 0] -= 1
    normals[ii == nx, 0] += 1
    normals[jj == 0, 1] -= 1
    normals[jj == ny, 1] += 1
    normals /= numpy.sqrt((normals ** 2).sum(axis=1, keepdims=True))
    return numpy.vstack([ii, jj]).T, normals


class BoundaryClass:
    """
    Stores the classification of every boundary node, one of
    ``'inflow'`` (:math:`b \\cdot \\nu < -\\tau`),
    ``'outflow'`` (:math:`b \\cdot \\nu > \\tau`),
    ``'tangent'`` (:math:`|b \\cdot \\nu| \\leqslant \\tau`).
    """

    def __init__(self, mesh, indices, normals, bdotnu, tau):
        self.mesh = mesh
        self.indices = indices
        self.normals = normals
        self.bdotnu = bdotnu
        self.tau = tau
        labels = numpy.full(bdotnu.shape, TANGENT, dtype=object)
        labels[bdotnu < -tau] = INFLOW
        labels[bdotnu > tau] = OUTFLOW
        self.labels = labels

    def __len__(self):
        return self.labels.shape[0]

    def label(self, i, j):
        """
        Returns the label of boundary node *(i, j)*.
        """
        sel = (self.indices[:, 0] == i) & (self.indices[:, 1] == j)
        if not sel.any():
            raise KeyError("Node ({0}, {1}) is not a boundary node.".format(i, j))
        return self.labels[sel][0]

    def mask(self, label):
        """
        Returns a boolean dual array, True for the boundary nodes
        with the given label.
        """
        mask = numpy.zeros(self.mesh.dual_shape, dtype=bool)
        sel = self.indices[self.labels == label]
        mask[sel[:, 0], sel[:, 1]] = True
        return mask

    def counts(self):
        "Number of nodes per label."
        return {k: int((self.labels == k).sum())
                for k in (INFLOW, OUTFLOW, TANGENT)}

    def to_dataframe(self):
        """
        Returns the classification as a dataframe with columns
        *i, j, nu_x, nu_y, bnu, label*.
        """
        return pandas.DataFrame(dict(
            i=self.indices[:, 0], j=self.indices[:, 1],
            nu_x=self.normals[:, 0], nu_y=self.normals[:, 1],
            bnu=self.bdotnu, label=self.labels))


def classify_boundary(mesh, b, tau=1e-12):
    """
    Classifies every boundary dual node.

    @param      mesh        @see cl Mesh
    @param      b           @see cl AnisotropyField
    @param      tau         tolerance
    @return                 @see cl BoundaryClass
    """
    if tau < 0:
        raise ValueError("tau must be >= 0 not {0}".format(tau))
    indices, normals = outward_normals(mesh)
    x = mesh.x[indices[:, 0]]
    y = mesh.y[indices[:, 1]]
    bx, by = b.direction(x, y)
    bdotnu = bx * normals[:, 0] + by * normals[:, 1]
    return BoundaryClass(mesh, indices, normals, bdotnu, tau)
