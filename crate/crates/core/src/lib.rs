pub mod alignment;
pub mod cli;
pub mod codecs;
pub mod hierarchy;
pub mod machines;
pub mod pattern;
pub mod setnum;
