//! Class maps from imaginary quadratic fields and toric periods.

pub mod classmap;
pub mod field;
pub mod interval;
pub mod period;

pub use classmap::{
    class_map_identities, embed, embeds, ideal_class_map, ClassMapIdentities, ClassMapTable, Embedding,
};
pub use field::{Character, IQField};
pub use period::{
    find_nonvanishing_twist, nonvanishing_verdict, one_class_per_genus_verdict, period,
    check_period_identities, period_conditions, PeriodConditions, PeriodConfig, PeriodValue, TwistSearch,
    Verdict, VerdictReport,
};
