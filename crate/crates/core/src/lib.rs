pub mod algebra;
pub mod canonical;
pub mod dqp;
pub mod error;
pub mod gram;
pub mod internal;
pub mod io;
pub mod lincomb;
pub mod par;
pub mod perm;
pub mod pictures;
pub mod preorder;
pub mod tableaux;
pub mod verify;
pub mod words;
