pub mod bench;
pub mod converge;
pub mod couette;
pub mod lemma5;
pub mod oracle_check;
pub mod verify_cmd;
