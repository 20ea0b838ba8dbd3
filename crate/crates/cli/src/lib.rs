//! Command-line front end and HTTP session server.

pub mod commands;
pub mod object;
pub mod server;
