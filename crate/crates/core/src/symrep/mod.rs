//! Characters of symmetric groups and decompositions of graded pieces.

mod character;
mod partition;

pub use character::{
    character_table, character_value, module_character, sym_power_character, CharacterTable, ClassFunction,
    MultiplicityVector, MAX_TABLE_N,
};
pub use partition::{hook_dimension, Partition};
