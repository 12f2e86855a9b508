//! Weakly reduced words in `G0 *_Λ G1`, the Nagao splitting of `GL_2(F[t])`
//! and Reiner automorphisms.

mod nagao;
mod reiner;
mod sample;
mod word;

pub use nagao::{nagao_decompose, nagao_swap};
pub use sample::{bounded_words, edge_elements, factor0_elements, factor1_elements, length_scan, random_word, LengthScan};
pub use reiner::{reiner_apply, reiner_apply_word, reiner_valid, square_subfield, ReinerMap};
pub use word::{
    is_weakly_reduced, length_parity, shuffle_edges, word_length, word_reduce, AmalgamSpec, AmalgamWord,
    NagaoSpec, ParityVerdict,
};
