"""Normalization schemes for the embedding Z.

- "dataset": renormalization layer with ||Z||_F^2 = tau.
- "channel": renormalization layer with ||Z^i||^2 = tau / d for each row i.
- "instance": no layer, but the penalty gamma2 * sum_i (||Z_i||^2 - tau)^2 is
  added to the smooth objective.
- "none": nothing.

The layers act on U, the raw encoder output, and gradients flow through them
exactly.

d = number of embedding dimensions
N = number of points
"""

import numpy
from subcol.utils import error_checking

NO_NORM_KIND = 'none'
DATASET_NORM_KIND = 'dataset'
CHANNEL_NORM_KIND = 'channel'
INSTANCE_NORM_KIND = 'instance'
VALID_NORM_KINDS = [
    NO_NORM_KIND, DATASET_NORM_KIND, CHANNEL_NORM_KIND, INSTANCE_NORM_KIND
]
LAYER_NORM_KINDS = [DATASET_NORM_KIND, CHANNEL_NORM_KIND]

KIND_KEY = 'kind'
TAU_KEY = 'tau'
GAMMA2_KEY = 'gamma2'


def create_normalization(kind, tau=1., gamma2=0.):
    """Creates normalization scheme.

    :param kind: Kind of scheme (must be in `VALID_NORM_KINDS`).
    :param tau: Norm budget (tau > 0).
    :param gamma2: Weight of instance penalty (used only for "instance").
    :return: normalization_dict: Dictionary with keys listed at top of module.
    """

    error_checking.assert_is_string_in_set(kind, VALID_NORM_KINDS)
    error_checking.assert_is_greater(tau, 0.)
    error_checking.assert_is_geq(gamma2, 0.)

    return {
        KIND_KEY: kind,
        TAU_KEY: float(tau),
        GAMMA2_KEY: float(gamma2) if kind == INSTANCE_NORM_KIND else 0.
    }


def _row_scales(raw_matrix, normalization_dict):
    """Finds target norm and current norm of each normalized block.

    For "dataset", the only block is the whole matrix.  For "channel", each
    row is a block.

    :param raw_matrix: d-by-N numpy array (U).
    :param normalization_dict: Dictionary created by `create_normalization`.
    :return: target_norms: numpy array of target norms, broadcastable to U.
    :return: current_norms: numpy array of current norms, broadcastable to U.
    """

    if normalization_dict[KIND_KEY] == DATASET_NORM_KIND:
        target_norms = numpy.sqrt(normalization_dict[TAU_KEY])
        current_norms = numpy.full((1, 1), numpy.linalg.norm(raw_matrix))
    else:
        target_norms = numpy.sqrt(
            normalization_dict[TAU_KEY] / raw_matrix.shape[0])
        current_norms = numpy.linalg.norm(raw_matrix, axis=1, keepdims=True)

    return target_norms, current_norms


def normalize(raw_matrix, normalization_dict):
    """Applies renormalization layer.

    :param raw_matrix: d-by-N numpy array (U).
    :param normalization_dict: Dictionary created by `create_normalization`.
    :return: embedding_matrix: d-by-N numpy array (Z).
    :return: zero_block_flag: Boolean flag.  True if any normalized block (the
        whole matrix or one row) was all zeros, in which case it is left at
        zero.
    """

    if normalization_dict[KIND_KEY] not in LAYER_NORM_KINDS:
        return raw_matrix.copy(), False

    target_norms, current_norms = _row_scales(raw_matrix, normalization_dict)
    zero_flags = current_norms == 0
    safe_norms = numpy.where(zero_flags, 1., current_norms)

    embedding_matrix = numpy.where(
        zero_flags, 0., target_norms * raw_matrix / safe_norms)

    return embedding_matrix, bool(numpy.any(zero_flags))


def normalize_backward(raw_matrix, embedding_gradient_matrix,
                       normalization_dict):
    """Backpropagates through renormalization layer.

    For a block u with z = s * u / ||u||, the gradient is
    s / ||u|| * (dz - <dz, u> u / ||u||^2).  Zero blocks get zero gradient.

    :param raw_matrix: d-by-N numpy array (U).
    :param embedding_gradient_matrix: d-by-N numpy array (gradient with
        respect to Z).
    :param normalization_dict: Dictionary created by `create_normalization`.
    :return: raw_gradient_matrix: d-by-N numpy array (gradient with respect
        to U).
    """

    if normalization_dict[KIND_KEY] not in LAYER_NORM_KINDS:
        return embedding_gradient_matrix.copy()

    target_norms, current_norms = _row_scales(raw_matrix, normalization_dict)
    zero_flags = current_norms == 0
    safe_norms = numpy.where(zero_flags, 1., current_norms)

    if normalization_dict[KIND_KEY] == DATASET_NORM_KIND:
        inner_products = numpy.full(
            (1, 1), numpy.sum(embedding_gradient_matrix * raw_matrix))
    else:
        inner_products = numpy.sum(
            embedding_gradient_matrix * raw_matrix, axis=1, keepdims=True)

    raw_gradient_matrix = (target_norms / safe_norms) * (
        embedding_gradient_matrix -
        inner_products * raw_matrix / safe_norms ** 2
    )

    return numpy.where(zero_flags, 0., raw_gradient_matrix)


def instance_penalty(embedding_matrix, normalization_dict):
    """Evaluates instance-norm penalty and its gradient.

    :param embedding_matrix: d-by-N numpy array (Z).
    :param normalization_dict: Dictionary created by `create_normalization`.
    :return: penalty_value: gamma2 * sum_i (||Z_i||^2 - tau)^2.  Zero unless
        the scheme is "instance".
    :return: gradient_matrix: d-by-N numpy array (gradient with respect
        to Z).
    """

    gamma2 = normalization_dict[GAMMA2_KEY]
    if normalization_dict[KIND_KEY] != INSTANCE_NORM_KIND or gamma2 == 0:
        return 0., numpy.zeros(embedding_matrix.shape)

    norm_excesses = (
        numpy.sum(embedding_matrix ** 2, axis=0) - normalization_dict[TAU_KEY]
    )

    penalty_value = gamma2 * float(numpy.sum(norm_excesses ** 2))
    gradient_matrix = 4 * gamma2 * norm_excesses * embedding_matrix
    return penalty_value, gradient_matrix
