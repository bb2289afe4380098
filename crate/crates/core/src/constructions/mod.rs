mod bundle;
mod cartan;
mod classical;
mod context;
mod kashiwara;
mod lie;
mod quantum;
mod sridharan;

pub use bundle::{GaloisBundle, TorsorData};
pub use cartan::CartanDatum;
pub use classical::{
    check_sridharan_match, classical_limit, mutually_reduce, rename_generators, translate,
    unified_limits,
};
pub use context::{BuildContext, RuleCache};
pub use kashiwara::{embed_uhat, kashiwara_bundle, kashiwara_torsor};
pub use lie::{heisenberg_datum, weyl_datum, Bracket, CocycleSpec, LieDatum, LieVector};
pub use quantum::{
    build_kashiwara, build_uhat, build_uprime, build_uq, is_toral, kashiwara_presentation, t, tinv,
    uhat_presentation, uprime_presentation, uq_presentation, HopfData,
};
pub use sridharan::{
    build_enveloping, build_sridharan, nilpotent_pair_datum, sridharan_bundle,
    sridharan_presentation,
};
