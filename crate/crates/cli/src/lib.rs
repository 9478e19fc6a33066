pub mod config;
pub mod report;
pub mod render;
pub mod app;
