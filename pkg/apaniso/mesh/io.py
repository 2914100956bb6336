"""
@file
@brief Reads and writes fields as CSV files.
"""
import numpy
import pandas
from .mesh import PrimalField, DualField


def fields_to_dataframe(mesh, kind='primal', **values):
    """
    Builds a dataframe with columns *i, j, x, y* followed by
    one column per array in *values*. If there is only one
    unnamed array, its column is called *value*.

    @param      mesh        @see cl Mesh
    @param      kind        ``'primal'`` or ``'dual'``
    @param      values      arrays or fields of the same kind
    @return                 dataframe
    """
    if kind == 'primal':
        shape = mesh.primal_shape
        x, y = mesh.primal_coordinates()
    elif kind == 'dual':
        shape = mesh.dual_shape
        x, y = mesh.dual_coordinates()
    else:
        raise ValueError("kind must be 'primal' or 'dual' not '{0}'".format(kind))
    ii, jj = numpy.meshgrid(numpy.arange(shape[0]), numpy.arange(shape[1]),
                            indexing='ij')
    data = dict(i=ii.ravel(), j=jj.ravel(), x=x.ravel(), y=y.ravel())
    for k, v in values.items():
        v = getattr(v, 'values', v)
        v = numpy.asarray(v)
        if v.size != ii.size:
            raise ValueError("Column '{0}' has {1} values, expecting {2}.".format(
                k, v.size, ii.size))
        data[k] = v.ravel()
    return pandas.DataFrame(data)


def write_field_csv(field, filename):
    """
    Writes a field into a CSV file with header ``i,j,x,y,value``.
    Floats are written with 17 significant digits so that
    reading them back gives the same values.

    @param      field       @see cl PrimalField or @see cl DualField
    @param      filename    filename or stream
    """
    df = fields_to_dataframe(field.mesh, field._kind,  # pylint: disable=W0212
                             value=field.values)
    df.to_csv(filename, index=False, float_format="%.17g")


def write_fields_csv(filename, mesh, kind='primal', **values):
    """
    Writes several arrays into one CSV file,
    see @see fn fields_to_dataframe.
    """
    df = fields_to_dataframe(mesh, kind, **values)
    df.to_csv(filename, index=False, float_format="%.17g")


def read_field_csv(filename, mesh, kind='primal', column='value'):
    """
    Reads a field written by @see fn write_field_csv.

    @param      filename    filename or stream
    @param      mesh        @see cl Mesh
    @param      kind        ``'primal'`` or ``'dual'``
    @param      column      column to read
    @return                 @see cl PrimalField or @see cl DualField
    """
    df = pandas.read_csv(filename)
    cls = PrimalField if kind == 'primal' else DualField
    shape = cls._shape(mesh)  # pylint: disable=W0212
    if df.shape[0] != shape[0] * shape[1]:
        raise ValueError("File has {0} rows, the mesh expects {1}.".format(
            df.shape[0], shape[0] * shape[1]))
    values = numpy.empty(shape)
    values[df['i'].values, df['j'].values] = df[column].values
    return cls(mesh, values)
