//! Asynchronous rhythm generation: instances, generator and models.

pub mod generator;
pub mod instance;
pub mod models;

pub use generator::{extend_instance, generate_extended, generate_instance, GenerateError, Generator};
pub use instance::{InstanceError, RhythmInstance, Voice};
pub use models::{build_om, build_sb, build_sm, build_sr, decode, map_sm_to_om, Model, ModelKind};
