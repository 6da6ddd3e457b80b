"""Fully connected autoencoder with one hidden ReLU layer on each side.

Encoder: U = W_e2 * relu(W_e1 * X + b_e1) + b_e2
Decoder: X_hat = W_d2 * relu(W_d1 * Y + b_d1) + b_d2

Points are stored as columns.  Gradients are computed by hand.

d_x = number of input dimensions
d = number of embedding dimensions
h = number of hidden units in encoder
h_d = number of hidden units in decoder
N = number of points
"""

import numpy
from subcol.utils import synthdata
from subcol.utils import normalization
from subcol.utils import numlin
from subcol.utils import file_system_utils
from subcol.utils import error_checking

ENCODER_WEIGHTS1_KEY = 'enc_w1'
ENCODER_BIASES1_KEY = 'enc_b1'
ENCODER_WEIGHTS2_KEY = 'enc_w2'
ENCODER_BIASES2_KEY = 'enc_b2'
DECODER_WEIGHTS1_KEY = 'dec_w1'
DECODER_BIASES1_KEY = 'dec_b1'
DECODER_WEIGHTS2_KEY = 'dec_w2'
DECODER_BIASES2_KEY = 'dec_b2'

PARAM_KEYS = [
    ENCODER_WEIGHTS1_KEY, ENCODER_BIASES1_KEY, ENCODER_WEIGHTS2_KEY,
    ENCODER_BIASES2_KEY, DECODER_WEIGHTS1_KEY, DECODER_BIASES1_KEY,
    DECODER_WEIGHTS2_KEY, DECODER_BIASES2_KEY
]
BIAS_KEYS = [
    ENCODER_BIASES1_KEY, ENCODER_BIASES2_KEY, DECODER_BIASES1_KEY,
    DECODER_BIASES2_KEY
]

COEFF_GRADIENT_KEY = 'coeff_matrix'

RECON_LOSS_KEY = 'recon_loss'
F_RESIDUAL_KEY = 'f_residual'
INSTANCE_PENALTY_KEY = 'instance_penalty'
SMOOTH_LOSS_KEY = 'smooth_loss'
RAW_EMBEDDING_KEY = 'raw_embedding_matrix'
EMBEDDING_KEY = 'embedding_matrix'
ZERO_BLOCK_KEY = 'zero_block_flag'

MATCH_TAU_POLICY = 'match_tau'
UNIT_BETA_POLICY = 'unit'
VALID_BETA_POLICIES = [MATCH_TAU_POLICY, UNIT_BETA_POLICY]
DEFAULT_BIAS_MARGIN = 1.

FLOAT_FORMAT_STRING = '%.17g'


def _relu(input_matrix):
    """Rectified linear unit.

    :param input_matrix: numpy array.
    :return: output_matrix: max(input_matrix, 0), elementwise.
    """

    return numpy.maximum(input_matrix, 0.)


def _affine(weight_matrix, input_matrix, bias_vector):
    """Applies affine map to each column.

    :param weight_matrix: M-by-K numpy array.
    :param input_matrix: K-by-N numpy array.
    :param bias_vector: length-M numpy array.
    :return: output_matrix: M-by-N numpy array.
    """

    return numpy.dot(weight_matrix, input_matrix) + bias_vector[:, None]


def check_params(param_dict):
    """Error-checks autoencoder parameters.

    :param param_dict: Dictionary with keys in `PARAM_KEYS`.
    :return: dimension_dict: Dictionary with keys "input_dim", "embedding_dim",
        "num_hidden_units", "num_decoder_hidden_units".
    :raises: ValueError: if any parameter is non-finite.
    :raises: TypeError: if dimensions are inconsistent.
    """

    missing_keys = [k for k in PARAM_KEYS if k not in param_dict]
    if len(missing_keys) > 0:
        raise KeyError('Missing parameters: {0:s}'.format(str(missing_keys)))

    error_checking.assert_is_matrix(param_dict[ENCODER_WEIGHTS1_KEY])
    num_hidden_units, input_dim = param_dict[ENCODER_WEIGHTS1_KEY].shape

    error_checking.assert_is_matrix(
        param_dict[ENCODER_WEIGHTS2_KEY], num_columns=num_hidden_units)
    embedding_dim = param_dict[ENCODER_WEIGHTS2_KEY].shape[0]

    error_checking.assert_is_matrix(
        param_dict[DECODER_WEIGHTS1_KEY], num_columns=embedding_dim)
    num_decoder_hidden_units = param_dict[DECODER_WEIGHTS1_KEY].shape[0]

    error_checking.assert_is_matrix(
        param_dict[DECODER_WEIGHTS2_KEY], num_rows=input_dim,
        num_columns=num_decoder_hidden_units)

    expected_lengths = [
        num_hidden_units, embedding_dim, num_decoder_hidden_units, input_dim
    ]

    for this_key, this_length in zip(BIAS_KEYS, expected_lengths):
        error_checking.assert_is_numpy_array(
            param_dict[this_key], exact_dimensions=numpy.array([this_length]))
        error_checking.assert_is_finite_numpy_array(param_dict[this_key])

    return {
        'input_dim': input_dim,
        'embedding_dim': embedding_dim,
        'num_hidden_units': num_hidden_units,
        'num_decoder_hidden_units': num_decoder_hidden_units
    }


def copy_params(param_dict):
    """Deep-copies autoencoder parameters.

    :param param_dict: Dictionary with keys in `PARAM_KEYS`.
    :return: new_param_dict: Copy.
    """

    return {k: param_dict[k].copy() for k in PARAM_KEYS}


def init_params(input_dim, embedding_dim, num_hidden_units,
                num_decoder_hidden_units=None, seed=0):
    """Initializes parameters randomly.

    Each weight and bias is drawn from Uniform[-s, s], where s = 1/sqrt(fan_in)
    for the layer.

    :param input_dim: d_x.
    :param embedding_dim: d.
    :param num_hidden_units: h.
    :param num_decoder_hidden_units: h_d (default h).
    :param seed: Random seed.
    :return: param_dict: Dictionary with keys in `PARAM_KEYS`.
    """

    if num_decoder_hidden_units is None:
        num_decoder_hidden_units = num_hidden_units

    for this_count in [input_dim, embedding_dim, num_hidden_units,
                       num_decoder_hidden_units]:
        error_checking.assert_is_integer(this_count)
        error_checking.assert_is_greater(this_count, 0)

    rng_object = numlin.create_rng(seed)
    layer_shapes = [
        (num_hidden_units, input_dim), (embedding_dim, num_hidden_units),
        (num_decoder_hidden_units, embedding_dim),
        (input_dim, num_decoder_hidden_units)
    ]
    weight_keys = [
        ENCODER_WEIGHTS1_KEY, ENCODER_WEIGHTS2_KEY, DECODER_WEIGHTS1_KEY,
        DECODER_WEIGHTS2_KEY
    ]

    param_dict = {}

    for this_weight_key, this_bias_key, this_shape in zip(
            weight_keys, BIAS_KEYS, layer_shapes):
        this_limit = 1. / numpy.sqrt(this_shape[1])
        param_dict[this_weight_key] = rng_object.uniform(
            -this_limit, this_limit, size=this_shape)
        param_dict[this_bias_key] = rng_object.uniform(
            -this_limit, this_limit, size=this_shape[0])

    return param_dict


def encode(data_matrix, param_dict):
    """Runs encoder.

    :param data_matrix: d_x-by-N numpy array.
    :param param_dict: Dictionary with keys in `PARAM_KEYS`.
    :return: raw_embedding_matrix: d-by-N numpy array (U).
    """

    dimension_dict = check_params(param_dict)
    error_checking.assert_is_matrix(
        data_matrix, num_rows=dimension_dict['input_dim'])

    hidden_matrix = _relu(_affine(
        param_dict[ENCODER_WEIGHTS1_KEY], data_matrix,
        param_dict[ENCODER_BIASES1_KEY]
    ))

    return _affine(
        param_dict[ENCODER_WEIGHTS2_KEY], hidden_matrix,
        param_dict[ENCODER_BIASES2_KEY]
    )


def decode(embedding_matrix, param_dict):
    """Runs decoder.

    :param embedding_matrix: d-by-N numpy array.
    :param param_dict: Dictionary with keys in `PARAM_KEYS`.
    :return: reconstructed_matrix: d_x-by-N numpy array.
    """

    dimension_dict = check_params(param_dict)
    error_checking.assert_is_matrix(
        embedding_matrix, num_rows=dimension_dict['embedding_dim'])

    hidden_matrix = _relu(_affine(
        param_dict[DECODER_WEIGHTS1_KEY], embedding_matrix,
        param_dict[DECODER_BIASES1_KEY]
    ))

    return _affine(
        param_dict[DECODER_WEIGHTS2_KEY], hidden_matrix,
        param_dict[DECODER_BIASES2_KEY]
    )


def embed(data_matrix, param_dict, normalization_dict=None):
    """Runs encoder followed by normalization layer.

    :param data_matrix: d_x-by-N numpy array.
    :param param_dict: Dictionary with keys in `PARAM_KEYS`.
    :param normalization_dict: See doc for `normalization.normalize`.  If
        None, no normalization.
    :return: embedding_matrix: d-by-N numpy array (Z).
    :return: zero_block_flag: See doc for `normalization.normalize`.
    """

    raw_embedding_matrix = encode(data_matrix, param_dict)
    if normalization_dict is None:
        return raw_embedding_matrix, False

    return normalization.normalize(raw_embedding_matrix, normalization_dict)


def backprop(data_matrix, param_dict, coeff_matrix, gamma,
             normalization_dict=None, zero_diag=False,
             compute_coeff_gradient=True):
    """Computes smooth part of joint loss and its gradients.

    The smooth loss is

    gamma * 0.5 * ||Z C - Z||_F^2 + ||X - decode(Z C)||_F^2 + P(Z),

    where Z = normalize(encode(X)) and P is the instance-norm penalty (zero for
    other schemes).  The subgradient of ReLU at 0 is taken to be 0.

    :param data_matrix: d_x-by-N numpy array (X).
    :param param_dict: Dictionary with keys in `PARAM_KEYS`.
    :param coeff_matrix: N-by-N numpy array (C).
    :param gamma: Weight of self-expression residual.
    :param normalization_dict: See doc for `embed`.
    :param zero_diag: Boolean flag.  If True, gradient with respect to the
        diagonal of C is zeroed.
    :param compute_coeff_gradient: Boolean flag.  If True, gradient with
        respect to C is computed.
    :return: loss_dict: Dictionary with the following keys.
    loss_dict['recon_loss']: ||X - X_hat||_F^2.
    loss_dict['f_residual']: 0.5 * ||Z C - Z||_F^2.
    loss_dict['instance_penalty']: P(Z).
    loss_dict['smooth_loss']: Total smooth loss.
    loss_dict['raw_embedding_matrix']: U.
    loss_dict['embedding_matrix']: Z.
    loss_dict['zero_block_flag']: See doc for `normalization.normalize`.

    :return: gradient_dict: Dictionary with keys in `PARAM_KEYS`, plus
        "coeff_matrix" if `compute_coeff_gradient = True`.
    """

    dimension_dict = check_params(param_dict)
    error_checking.assert_is_matrix(
        data_matrix, num_rows=dimension_dict['input_dim'])

    num_points = data_matrix.shape[1]
    error_checking.assert_is_matrix(
        coeff_matrix, num_rows=num_points, num_columns=num_points)
    error_checking.assert_is_geq(gamma, 0.)
    error_checking.assert_is_boolean(zero_diag)
    error_checking.assert_is_boolean(compute_coeff_gradient)

    if normalization_dict is None:
        normalization_dict = normalization.create_normalization(
            normalization.NO_NORM_KIND)

    # Forward pass.
    encoder_preact_matrix = _affine(
        param_dict[ENCODER_WEIGHTS1_KEY], data_matrix,
        param_dict[ENCODER_BIASES1_KEY]
    )
    encoder_hidden_matrix = _relu(encoder_preact_matrix)
    raw_embedding_matrix = _affine(
        param_dict[ENCODER_WEIGHTS2_KEY], encoder_hidden_matrix,
        param_dict[ENCODER_BIASES2_KEY]
    )

    embedding_matrix, zero_block_flag = normalization.normalize(
        raw_embedding_matrix, normalization_dict)
    expressed_matrix = numpy.dot(embedding_matrix, coeff_matrix)

    decoder_preact_matrix = _affine(
        param_dict[DECODER_WEIGHTS1_KEY], expressed_matrix,
        param_dict[DECODER_BIASES1_KEY]
    )
    decoder_hidden_matrix = _relu(decoder_preact_matrix)
    reconstructed_matrix = _affine(
        param_dict[DECODER_WEIGHTS2_KEY], decoder_hidden_matrix,
        param_dict[DECODER_BIASES2_KEY]
    )

    expression_error_matrix = expressed_matrix - embedding_matrix
    recon_error_matrix = reconstructed_matrix - data_matrix
    penalty_value, penalty_gradient_matrix = normalization.instance_penalty(
        embedding_matrix, normalization_dict)

    recon_loss = float(numpy.sum(recon_error_matrix ** 2))
    f_residual = 0.5 * float(numpy.sum(expression_error_matrix ** 2))

    loss_dict = {
        RECON_LOSS_KEY: recon_loss,
        F_RESIDUAL_KEY: f_residual,
        INSTANCE_PENALTY_KEY: penalty_value,
        SMOOTH_LOSS_KEY: gamma * f_residual + recon_loss + penalty_value,
        RAW_EMBEDDING_KEY: raw_embedding_matrix,
        EMBEDDING_KEY: embedding_matrix,
        ZERO_BLOCK_KEY: zero_block_flag
    }

    # Backward pass through decoder.
    gradient_dict = {}
    recon_gradient_matrix = 2 * recon_error_matrix

    gradient_dict[DECODER_WEIGHTS2_KEY] = numpy.dot(
        recon_gradient_matrix, decoder_hidden_matrix.T)
    gradient_dict[DECODER_BIASES2_KEY] = numpy.sum(
        recon_gradient_matrix, axis=1)

    decoder_preact_gradient_matrix = numpy.dot(
        param_dict[DECODER_WEIGHTS2_KEY].T, recon_gradient_matrix
    ) * (decoder_preact_matrix > 0)

    gradient_dict[DECODER_WEIGHTS1_KEY] = numpy.dot(
        decoder_preact_gradient_matrix, expressed_matrix.T)
    gradient_dict[DECODER_BIASES1_KEY] = numpy.sum(
        decoder_preact_gradient_matrix, axis=1)

    expressed_gradient_matrix = numpy.dot(
        param_dict[DECODER_WEIGHTS1_KEY].T, decoder_preact_gradient_matrix)

    # Self-expressive layer.
    if compute_coeff_gradient:
        coeff_gradient_matrix = numpy.dot(
            embedding_matrix.T,
            expressed_gradient_matrix + gamma * expression_error_matrix
        )
        if zero_diag:
            numpy.fill_diagonal(coeff_gradient_matrix, 0.)

        gradient_dict[COEFF_GRADIENT_KEY] = coeff_gradient_matrix

    coeff_minus_identity_matrix = coeff_matrix - numpy.eye(num_points)
    embedding_gradient_matrix = (
        numpy.dot(expressed_gradient_matrix, coeff_matrix.T) +
        gamma * numpy.dot(
            expression_error_matrix, coeff_minus_identity_matrix.T) +
        penalty_gradient_matrix
    )

    # Backward pass through normalization and encoder.
    raw_embedding_gradient_matrix = normalization.normalize_backward(
        raw_embedding_matrix, embedding_gradient_matrix, normalization_dict)

    gradient_dict[ENCODER_WEIGHTS2_KEY] = numpy.dot(
        raw_embedding_gradient_matrix, encoder_hidden_matrix.T)
    gradient_dict[ENCODER_BIASES2_KEY] = numpy.sum(
        raw_embedding_gradient_matrix, axis=1)

    encoder_preact_gradient_matrix = numpy.dot(
        param_dict[ENCODER_WEIGHTS2_KEY].T, raw_embedding_gradient_matrix
    ) * (encoder_preact_matrix > 0)

    gradient_dict[ENCODER_WEIGHTS1_KEY] = numpy.dot(
        encoder_preact_gradient_matrix, data_matrix.T)
    gradient_dict[ENCODER_BIASES1_KEY] = numpy.sum(
        encoder_preact_gradient_matrix, axis=1)

    return loss_dict, gradient_dict


def scaling_attack(param_dict, alpha, coeff_scale=1.):
    """Rescales embedding without changing reconstructions.

    The last encoder layer is affine, hence positively homogeneous of degree 1,
    so multiplying its weights and biases by alpha multiplies the embedding by
    alpha.  The first decoder weight matrix is divided by
    alpha * coeff_scale, so that decode(alpha * Z * coeff_scale * C) equals
    decode(Z C) for any C.

    :param param_dict: Dictionary with keys in `PARAM_KEYS`.
    :param alpha: Scaling factor for embedding (> 0).
    :param coeff_scale: Scaling factor that the caller applies to C (> 0).
    :return: new_param_dict: Rescaled parameters.
    """

    check_params(param_dict)
    error_checking.assert_is_greater(alpha, 0.)
    error_checking.assert_is_greater(coeff_scale, 0.)

    new_param_dict = copy_params(param_dict)
    new_param_dict[ENCODER_WEIGHTS2_KEY] *= alpha
    new_param_dict[ENCODER_BIASES2_KEY] *= alpha
    new_param_dict[DECODER_WEIGHTS1_KEY] /= alpha * coeff_scale

    return new_param_dict


def _positive_bias(preact_matrix, bias_margin):
    """Finds bias that makes all pre-activations positive.

    :param preact_matrix: M-by-N numpy array of pre-activations without bias.
    :param bias_margin: Non-negative margin.
    :return: bias_vector: length-M numpy array.
    """

    return (
        numpy.maximum(0., -numpy.min(preact_matrix, axis=1)) + bias_margin
    )


def identity_construction(
        data_matrix, tau, alpha, beta_policy=MATCH_TAU_POLICY,
        bias_margin=DEFAULT_BIAS_MARGIN, num_hidden_units=None,
        num_decoder_hidden_units=None):
    """Constructs weights that embed all points near one point but decode
    exactly.

    The first d_x hidden units of each network carry the identity, and the
    biases keep every pre-activation non-negative so that ReLU is inactive.
    The embedding is Z = beta * (alpha * X + b), where b is the first-layer
    bias, so pairwise distances are O(alpha) and, with
    beta = tau / ||b||, each embedded norm is within O(alpha) of tau.

    :param data_matrix: d_x-by-N numpy array.
    :param tau: Target embedded norm (> 0).
    :param alpha: Scale of first encoder layer (> 0).
    :param beta_policy: Either "match_tau" (beta = tau / ||b||) or "unit"
        (beta = 1).
    :param bias_margin: Non-negative margin added to biases.
    :param num_hidden_units: h (default d_x).
    :param num_decoder_hidden_units: h_d (default h).
    :return: param_dict: Dictionary with keys in `PARAM_KEYS`.  Embedding
        dimension equals d_x.
    :raises: ValueError: if hidden width is smaller than d_x, or if
        beta_policy = "match_tau" and the first-layer bias is zero.
    """

    error_checking.assert_is_matrix(data_matrix)
    error_checking.assert_is_greater(tau, 0.)
    error_checking.assert_is_greater(alpha, 0.)
    error_checking.assert_is_string_in_set(beta_policy, VALID_BETA_POLICIES)
    error_checking.assert_is_geq(bias_margin, 0.)

    input_dim = data_matrix.shape[0]
    if num_hidden_units is None:
        num_hidden_units = input_dim
    if num_decoder_hidden_units is None:
        num_decoder_hidden_units = num_hidden_units

    for this_count in [num_hidden_units, num_decoder_hidden_units]:
        error_checking.assert_is_integer(this_count)
        if this_count < input_dim:
            error_string = (
                'Hidden width ({0:d}) must be >= input dimension ({1:d}) to '
                'express the identity.'
            ).format(this_count, input_dim)

            raise ValueError(error_string)

    encoder_lift_matrix = numpy.eye(num_hidden_units, input_dim)
    decoder_lift_matrix = numpy.eye(num_decoder_hidden_units, input_dim)

    encoder_weight_matrix1 = alpha * encoder_lift_matrix
    encoder_bias_vector1 = _positive_bias(
        numpy.dot(encoder_weight_matrix1, data_matrix), bias_margin)

    carried_bias_norm = numpy.linalg.norm(encoder_bias_vector1[:input_dim])

    if beta_policy == UNIT_BETA_POLICY:
        beta = 1.
    elif carried_bias_norm == 0:
        raise ValueError(
            'First-layer bias is zero, so beta = tau / ||b|| is undefined.  '
            'Use a positive bias margin or beta policy "unit".'
        )
    else:
        beta = tau / carried_bias_norm

    encoder_weight_matrix2 = beta * encoder_lift_matrix.T
    encoder_bias_vector2 = numpy.zeros(input_dim)

    embedding_matrix = beta * (
        alpha * data_matrix + encoder_bias_vector1[:input_dim, None]
    )

    decoder_weight_matrix1 = decoder_lift_matrix / beta
    decoder_bias_vector1 = _positive_bias(
        numpy.dot(decoder_weight_matrix1, embedding_matrix), bias_margin)

    decoder_weight_matrix2 = decoder_lift_matrix.T / alpha
    decoder_bias_vector2 = -(
        encoder_bias_vector1[:input_dim] + decoder_bias_vector1[:input_dim]
    ) / alpha

    return {
        ENCODER_WEIGHTS1_KEY: encoder_weight_matrix1,
        ENCODER_BIASES1_KEY: encoder_bias_vector1,
        ENCODER_WEIGHTS2_KEY: encoder_weight_matrix2,
        ENCODER_BIASES2_KEY: encoder_bias_vector2,
        DECODER_WEIGHTS1_KEY: decoder_weight_matrix1,
        DECODER_BIASES1_KEY: decoder_bias_vector1,
        DECODER_WEIGHTS2_KEY: decoder_weight_matrix2,
        DECODER_BIASES2_KEY: decoder_bias_vector2
    }


def write_params(param_file_name, param_dict):
    """Writes autoencoder parameters to text file.

    Each parameter is one block: a header line "name,rows,cols", followed by
    one line per row.  Biases are written as column vectors.

    :param param_file_name: Path to output file.
    :param param_dict: Dictionary with keys in `PARAM_KEYS`.
    """

    check_params(param_dict)
    file_system_utils.mkdir_recursive_if_necessary(file_name=param_file_name)

    with open(param_file_name, 'w') as param_file_handle:
        for this_key in PARAM_KEYS:
            this_matrix = param_dict[this_key]
            if this_key in BIAS_KEYS:
                this_matrix = numpy.reshape(this_matrix, (-1, 1))

            numpy.savetxt(
                param_file_handle, this_matrix, fmt=FLOAT_FORMAT_STRING,
                delimiter=',', comments='',
                header='{0:s},{1:d},{2:d}'.format(
                    this_key, this_matrix.shape[0], this_matrix.shape[1])
            )


def read_params(param_file_name):
    """Reads autoencoder parameters from text file.

    :param param_file_name: Path to input file.
    :return: param_dict: Dictionary with keys in `PARAM_KEYS`.
    :raises: MalformedHeaderError: if a block header is malformed, names an
        unknown parameter, or a parameter is missing.
    :raises: CountMismatchError: if a block has the wrong number of values.
    """

    error_checking.assert_file_exists(param_file_name)

    with open(param_file_name, 'r') as param_file_handle:
        line_strings = [
            s.strip() for s in param_file_handle.read().splitlines()
        ]

    line_numbers = [i + 1 for i, s in enumerate(line_strings) if s != '']
    line_strings = [s for s in line_strings if s != '']

    param_dict = {}
    i = 0

    while i < len(line_strings):
        this_name, _, this_shape_string = line_strings[i].partition(',')
        if this_name not in PARAM_KEYS:
            raise error_checking.MalformedHeaderError(
                'Line {0:d}: "{1:s}" is not a parameter header.'.format(
                    line_numbers[i], line_strings[i])
            )

        this_num_rows, this_num_columns = synthdata.parse_shape_header(
            this_shape_string)

        these_value_lines = line_strings[(i + 1):(i + 1 + this_num_rows)]
        this_next_header_index = next(
            (j for j, s in enumerate(these_value_lines)
             if s.partition(',')[0] in PARAM_KEYS),
            None
        )
        if this_next_header_index is not None:
            these_value_lines = these_value_lines[:this_next_header_index]

        this_matrix = synthdata.parse_value_lines(
            value_lines=these_value_lines, num_rows=this_num_rows,
            num_columns=this_num_columns,
            line_numbers=line_numbers[
                (i + 1):(i + 1 + len(these_value_lines))
            ])

        if this_name in BIAS_KEYS:
            this_matrix = numpy.ravel(this_matrix)

        param_dict[this_name] = this_matrix
        i += 1 + this_num_rows

    missing_keys = [k for k in PARAM_KEYS if k not in param_dict]
    if len(missing_keys) > 0:
        raise error_checking.MalformedHeaderError(
            'File "{0:s}" is missing parameters: {1:s}'.format(
                param_file_name, str(missing_keys))
        )

    check_params(param_dict)
    return param_dict
