# Service layer
from .coalgebra_service import (
    check_coalgebra,
    check_algebra,
    check_morphism,
    setlike_coalgebra,
    matrix_coalgebra,
    divided_power_coalgebra,
    direct_sum,
    tensor_coalgebra,
    dual_algebra,
    quotient_coalgebra,
    restrict_coalgebra,
    subcoalgebra_closure
)
from .coradical_service import (
    wedge,
    wedge_power,
    jacobson_radical,
    coradical,
    coradical_filtration,
    is_pointed,
    check_surjective_image
)
from .colored_service import (
    check_retraction,
    coactions,
    verify_bicomodule,
    reduced_delta,
    conilpotency,
    projection_identity_check,
    ortho_idempotents,
    check_idempotent_actions,
    bigraded_decomposition,
    from_pointed_with_splitting,
    verify_pointed,
    color_wedge_filtration,
    tensor_colored,
    from_coaugmentation,
    reduce,
    reduction_isomorphism,
    check_reduced,
    unreduce,
    check_colored_morphism,
    extend_morphism,
    restrict_morphism,
    is_simply_colored
)
from .construction_service import (
    path_coalgebra,
    path_grading,
    count_paths,
    check_grading,
    space_like_check,
    check_index_bound,
    check_bicomodule,
    homogeneous_bicomodule,
    cotensor,
    cotensor_coalgebra,
    cofree_universal_map,
    cofree_uniqueness_certificate,
    deformation_space_dim
)
from .convolution_service import (
    convolve,
    conv_unit,
    conv_inverse,
    conv_inverse_general,
    solve_convolution_inverse,
    check_bialgebra,
    check_group,
    antipode,
    group_bialgebra,
    cyclic_group_bialgebra,
    truncated_polynomial_bialgebra
)
from .category_service import (
    coproduct,
    coproduct_factorization,
    equalizer,
    equalizer_factorization,
    coequalizer_reduced,
    coequalizer_factorization,
    product_truncated,
    product_factorization
)
from .definition_service import (
    parse,
    parse_text,
    load,
    emit
)

__all__ = [
    # Coalgebras
    "check_coalgebra",
    "check_algebra",
    "check_morphism",
    "setlike_coalgebra",
    "matrix_coalgebra",
    "divided_power_coalgebra",
    "direct_sum",
    "tensor_coalgebra",
    "dual_algebra",
    "quotient_coalgebra",
    "restrict_coalgebra",
    "subcoalgebra_closure",
    # Coradical & Pointedness
    "wedge",
    "wedge_power",
    "jacobson_radical",
    "coradical",
    "coradical_filtration",
    "is_pointed",
    "check_surjective_image",
    # Simply Colored
    "check_retraction",
    "coactions",
    "verify_bicomodule",
    "reduced_delta",
    "conilpotency",
    "projection_identity_check",
    "ortho_idempotents",
    "check_idempotent_actions",
    "bigraded_decomposition",
    "from_pointed_with_splitting",
    "verify_pointed",
    "color_wedge_filtration",
    "tensor_colored",
    "from_coaugmentation",
    "reduce",
    "reduction_isomorphism",
    "check_reduced",
    "unreduce",
    "check_colored_morphism",
    "extend_morphism",
    "restrict_morphism",
    "is_simply_colored",
    # Paths, Gradings & Cofree
    "path_coalgebra",
    "path_grading",
    "count_paths",
    "check_grading",
    "space_like_check",
    "check_index_bound",
    "check_bicomodule",
    "homogeneous_bicomodule",
    "cotensor",
    "cotensor_coalgebra",
    "cofree_universal_map",
    "cofree_uniqueness_certificate",
    "deformation_space_dim",
    # Convolution
    "convolve",
    "conv_unit",
    "conv_inverse",
    "conv_inverse_general",
    "solve_convolution_inverse",
    "check_bialgebra",
    "check_group",
    "antipode",
    "group_bialgebra",
    "cyclic_group_bialgebra",
    "truncated_polynomial_bialgebra",
    # Universal Constructions
    "coproduct",
    "coproduct_factorization",
    "equalizer",
    "equalizer_factorization",
    "coequalizer_reduced",
    "coequalizer_factorization",
    "product_truncated",
    "product_factorization",
    # Definition Files
    "parse",
    "parse_text",
    "load",
    "emit",
]
