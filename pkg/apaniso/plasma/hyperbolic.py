"""
@file
@brief Explicit terms of the Euler-Lorentz model: ghost cells,
convection of the momentum with a local Lax-Friedrichs flux,
centered divergence of the momentum and the drift velocity
used on the boundary.

Arrays with ghost cells have shape *(nx + 2, ny + 2)*.
The density of a ghost cell is the boundary density,
its perpendicular momentum follows the drift formula and its
parallel momentum is copied from the nearest cell
(homogeneous Neumann condition).
"""
import numpy
from ..mesh import PrimalField
from ..discrete.operators import node_average, cell_gradient


def density_nodes(n, n_boundary):
    """
    Density at the dual nodes, average of the four cells
    around interior nodes, boundary density on the boundary.

    @param      n           array *(nx, ny)*
    @param      n_boundary  boundary density
    @return                 array *(nx + 1, ny + 1)*
    """
    padded = numpy.pad(n, 1, mode='constant', constant_values=n_boundary)
    return node_average(padded, n_boundary=n_boundary)


def density_gradient(n, mesh, n_boundary):
    """
    Gradient of the density on every cell computed from
    @see fn density_nodes with the stencil of
    :math:`(b \\cdot \\nabla)_{app}`.

    @return     two arrays *(nx, ny)*
    """
    return cell_gradient(density_nodes(n, n_boundary), mesh)


def drift_momentum(n, gx, gy, fields, temperature):
    """
    Perpendicular momentum of the drift limit,
    :math:`(nu)_\\perp = \\frac{1}{|B|} b \\times (T \\nabla n - n E)`.

    @param      n           density
    @param      gx, gy      density gradient
    @param      fields      dictionary returned by
                            @see me PlasmaConfig.cell_fields
    @param      temperature *T*
    @return                 three arrays
    """
    bx, by, bmag = fields['bx'], fields['by'], fields['bmag']
    vx = temperature * gx - n * fields['ex']
    vy = temperature * gy - n * fields['ey']
    vz = -n * fields['ez']
    return by * vz / bmag, -bx * vz / bmag, (bx * vy - by * vx) / bmag


def fill_ghosts(state, config, fields=None):
    """
    Adds one layer of ghost cells to every field of the state.

    @param      state       @see cl PlasmaState
    @param      config      @see cl PlasmaConfig
    @param      fields      result of ``config.cell_fields(ghost=1)``,
                            computed if None
    @return                 dictionary ``{'n', 'mx', 'my', 'mz'}`` of
                            arrays *(nx + 2, ny + 2)*
    """
    if fields is None:
        fields = config.cell_fields(ghost=1)
    nb = config.n_boundary
    n = state.n.values
    mx, my, mz = state.momentum()
    gx, gy = density_gradient(n, state.mesh, nb)
    n_pad = numpy.pad(n, 1, mode='constant', constant_values=nb)
    gx = numpy.pad(gx, 1, mode='edge')
    gy = numpy.pad(gy, 1, mode='edge')
    bx, by = fields['bx'], fields['by']
    par = mx * bx[1:-1, 1:-1] + my * by[1:-1, 1:-1]
    par = numpy.pad(par, 1, mode='edge')
    dx, dy, dz = drift_momentum(n_pad, gx, gy, fields, config.temperature)
    res = dict(n=n_pad)
    for name, inside, ghost in [('mx', mx, dx + par * bx),
                                ('my', my, dy + par * by),
                                ('mz', mz, dz)]:
        ghost = numpy.array(ghost)
        ghost[1:-1, 1:-1] = inside
        res[name] = ghost
    return res


def _llf_fluxes(q, u, axis):
    # local Lax-Friedrichs flux on the faces orthogonal to axis
    if axis == 0:
        ql, qr = q[:-1, 1:-1], q[1:, 1:-1]
        ul, ur = u[:-1, 1:-1], u[1:, 1:-1]
    else:
        ql, qr = q[1:-1, :-1], q[1:-1, 1:]
        ul, ur = u[1:-1, :-1], u[1:-1, 1:]
    speed = numpy.maximum(numpy.abs(ul), numpy.abs(ur))
    return 0.5 * (ql * ul + qr * ur) - 0.5 * speed * (qr - ql)


def convective_divergence(state, config, padded=None):
    """
    Computes :math:`\\nabla \\cdot (n u \\otimes u)` for the three
    momentum components with a first order local Lax-Friedrichs flux.

    @param      state       @see cl PlasmaState
    @param      config      @see cl PlasmaConfig (ghost cells)
    @param      padded      result of @see fn fill_ghosts, computed if None
    @return                 three @see cl PrimalField
    """
    mesh = state.mesh
    if padded is None:
        padded = fill_ghosts(state, config)
    n = padded['n']
    ux = padded['mx'] / n
    uy = padded['my'] / n
    res = []
    for name in ['mx', 'my', 'mz']:
        q = padded[name]
        fx = _llf_fluxes(q, ux, 0)
        fy = _llf_fluxes(q, uy, 1)
        div = (fx[1:, :] - fx[:-1, :]) / mesh.dx + (fy[:, 1:] - fy[:, :-1]) / mesh.dy
        res.append(PrimalField(mesh, div, check=False))
    return tuple(res)


def _face_fluxes(mx, my):
    fx = 0.5 * (mx[:-1, 1:-1] + mx[1:, 1:-1])
    fy = 0.5 * (my[1:-1, :-1] + my[1:-1, 1:])
    return fx, fy


def momentum_divergence(mx, my, mesh):
    """
    Divergence of the momentum on every cell, the flux through a face
    is the average of the two adjacent cells.

    @param      mx, my      arrays *(nx + 2, ny + 2)* with ghost cells
    @param      mesh        @see cl Mesh
    @return                 array *(nx, ny)*
    """
    fx, fy = _face_fluxes(mx, my)
    return (fx[1:, :] - fx[:-1, :]) / mesh.dx + (fy[:, 1:] - fy[:, :-1]) / mesh.dy


def boundary_flux(mx, my, mesh):
    """
    Outgoing momentum flux through the boundary with the face
    values of @see fn momentum_divergence. The sum of the divergence
    times the cell area equals this flux.
    """
    fx, fy = _face_fluxes(mx, my)
    return float((fx[-1, :].sum() - fx[0, :].sum()) * mesh.dy +
                 (fy[:, -1].sum() - fy[:, 0].sum()) * mesh.dx)
