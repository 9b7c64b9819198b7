//! Catalog embedded at build time, one entry per `proofs/<id>.trig` file.

/// `(lemma id, DSL source)` pairs in file-name order.
pub const SHIPPED: &[(&str, &str)] = &[
    ("angle_bisector_theorem", include_str!("../../../../proofs/angle_bisector_theorem.trig")),
    ("cos_add", include_str!("../../../../proofs/cos_add.trig")),
    ("cos_double_angle", include_str!("../../../../proofs/cos_double_angle.trig")),
    ("cos_sub", include_str!("../../../../proofs/cos_sub.trig")),
    ("exercise_bf_df", include_str!("../../../../proofs/exercise_bf_df.trig")),
    ("exercise_triple_angle", include_str!("../../../../proofs/exercise_triple_angle.trig")),
    ("fig1_facts", include_str!("../../../../proofs/fig1_facts.trig")),
    ("fig2_facts", include_str!("../../../../proofs/fig2_facts.trig")),
    ("fig3_facts", include_str!("../../../../proofs/fig3_facts.trig")),
    ("fig4_facts", include_str!("../../../../proofs/fig4_facts.trig")),
    ("fig5_facts", include_str!("../../../../proofs/fig5_facts.trig")),
    ("fig6_facts", include_str!("../../../../proofs/fig6_facts.trig")),
    ("fig7_facts", include_str!("../../../../proofs/fig7_facts.trig")),
    ("fig8_facts", include_str!("../../../../proofs/fig8_facts.trig")),
    ("ha_congruence", include_str!("../../../../proofs/ha_congruence.trig")),
    ("half_tangent_relation", include_str!("../../../../proofs/half_tangent_relation.trig")),
    ("law_of_cosines", include_str!("../../../../proofs/law_of_cosines.trig")),
    ("law_of_sines", include_str!("../../../../proofs/law_of_sines.trig")),
    ("proof_exercise", include_str!("../../../../proofs/proof_exercise.trig")),
    ("proof_first", include_str!("../../../../proofs/proof_first.trig")),
    ("proof_second", include_str!("../../../../proofs/proof_second.trig")),
    ("proof_third", include_str!("../../../../proofs/proof_third.trig")),
    ("pythagorean_identity", include_str!("../../../../proofs/pythagorean_identity.trig")),
    ("pythagorean_identity_zimba", include_str!("../../../../proofs/pythagorean_identity_zimba.trig")),
    ("ratio_definitions", include_str!("../../../../proofs/ratio_definitions.trig")),
    ("sec_squared", include_str!("../../../../proofs/sec_squared.trig")),
    ("similar_triangle_ratios", include_str!("../../../../proofs/similar_triangle_ratios.trig")),
    ("sin_add", include_str!("../../../../proofs/sin_add.trig")),
    ("sin_double_angle", include_str!("../../../../proofs/sin_double_angle.trig")),
    ("sin_sub", include_str!("../../../../proofs/sin_sub.trig")),
    ("sin_supplement", include_str!("../../../../proofs/sin_supplement.trig")),
    ("tan_double_angle", include_str!("../../../../proofs/tan_double_angle.trig")),
    ("triangle_angle_sum", include_str!("../../../../proofs/triangle_angle_sum.trig")),
    ("triangle_area_two_ways", include_str!("../../../../proofs/triangle_area_two_ways.trig")),
];
