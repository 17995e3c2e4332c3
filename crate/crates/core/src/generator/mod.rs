//! Generation of sphere triangulations: pure chord-cycles, Eberhard
//! operations, diagonal flips, canonical codes, normalization to the
//! standard form, and exhaustive closures.

pub mod canonical;
pub mod closure;
pub mod cycles;
pub mod eberhard;
pub mod flip;
pub mod normalize;

pub use canonical::{canonical_code, canonical_standard_form, CanonicalCode};
pub use closure::{
    campaign_lines, expected_class_count, flip_closure, flip_closure_with_ceiling, generate_all,
    generate_all_with_ceiling, CampaignLine, ClassMap, DeltaStats, DeltaViolation, EberhardCampaign,
    GenerationRecord, TraceStep, DEFAULT_CLOSURE_CEILING,
};
pub use cycles::{find_pure_chord_cycles, is_pure_chord_cycle, pure_chord_regions, CycleRef};
pub use eberhard::{apply_eberhard, clique_delta, CliqueDelta, EberhardKind, EberhardOp};
pub use flip::{diagonal_flip, legal_flips, FlipMove};
pub use normalize::{normalize_to_standard, replay_flips};
