//! Web debugger for QHDL simulations.
//!
//! One TCP port serves the page over HTTP and the stepping protocol over a
//! WebSocket at `/ws`. The simulation lives on its own thread; connections
//! talk to it through a channel, one command at a time, and it never moves
//! unless asked.
//!
//! ```text
//! client -> {"type":"step"} | {"type":"status"}
//! server -> {"type":"state",...} | {"type":"ended"} | {"type":"error","message":...}
//! ```

mod http;
mod session;

use std::io;
use std::net::{SocketAddr, TcpListener, TcpStream};
use std::path::PathBuf;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::mpsc::{self, Receiver, Sender};
use std::sync::Arc;
use std::thread::{self, JoinHandle};
use std::time::Duration;

use thiserror::Error;
use tungstenite::protocol::frame::coding::CloseCode;
use tungstenite::protocol::CloseFrame;
use tungstenite::{Message, WebSocket};

pub use http::INDEX_HTML;
pub use session::{Amplitude, CommandMessage, DebugSession, ServerMessage, StateMessage};

#[derive(Debug, Error)]
pub enum DebugError {
    #[error("port {0} is already in use")]
    PortInUse(u16),
    #[error("{0}")]
    Io(#[from] io::Error),
}

type Request = (CommandMessage, Sender<ServerMessage>);

pub struct DebugServer {
    listener: TcpListener,
    assets: Option<PathBuf>,
    session: DebugSession,
}

impl DebugServer {
    /// Binds `127.0.0.1:port`; port 0 picks a free one.
    pub fn bind(port: u16, session: DebugSession) -> Result<Self, DebugError> {
        let listener = TcpListener::bind(("127.0.0.1", port)).map_err(|e| match e.kind() {
            io::ErrorKind::AddrInUse => DebugError::PortInUse(port),
            _ => DebugError::Io(e),
        })?;
        Ok(DebugServer {
            listener,
            assets: None,
            session,
        })
    }

    /// Serves `/assets/*` from `dir` ahead of the built-in assets.
    pub fn with_assets(mut self, dir: impl Into<PathBuf>) -> Self {
        self.assets = Some(dir.into());
        self
    }

    pub fn local_addr(&self) -> io::Result<SocketAddr> {
        self.listener.local_addr()
    }

    /// Serves until the process exits.
    pub fn serve(self) -> Result<(), DebugError> {
        let stop = Arc::new(AtomicBool::new(false));
        self.run(stop)
    }

    /// Serves on a background thread.
    pub fn spawn(self) -> Result<ServerHandle, DebugError> {
        let addr = self.local_addr()?;
        let stop = Arc::new(AtomicBool::new(false));
        let flag = stop.clone();
        let join = thread::spawn(move || self.run(flag));
        Ok(ServerHandle { addr, stop, join })
    }

    fn run(self, stop: Arc<AtomicBool>) -> Result<(), DebugError> {
        let (tx, rx) = mpsc::channel::<Request>();
        let mut session = self.session;
        let engine = thread::spawn(move || engine_loop(&mut session, rx));
        let busy = Arc::new(AtomicBool::new(false));
        let assets = self.assets.map(Arc::new);

        for stream in self.listener.incoming() {
            if stop.load(Ordering::SeqCst) {
                break;
            }
            let Ok(stream) = stream else { continue };
            let (tx, busy, assets) = (tx.clone(), busy.clone(), assets.clone());
            thread::spawn(move || {
                let _ = handle_connection(stream, tx, busy, assets.as_deref().map(|p| p.as_path()));
            });
        }
        drop(tx);
        let _ = engine.join();
        Ok(())
    }
}

pub struct ServerHandle {
    addr: SocketAddr,
    stop: Arc<AtomicBool>,
    join: JoinHandle<Result<(), DebugError>>,
}

impl ServerHandle {
    pub fn addr(&self) -> SocketAddr {
        self.addr
    }

    /// Stops accepting connections and waits for the accept loop.
    pub fn shutdown(self) -> Result<(), DebugError> {
        self.stop.store(true, Ordering::SeqCst);
        // Wake the blocking accept.
        let _ = TcpStream::connect(self.addr);
        self.join.join().unwrap_or(Ok(()))
    }
}

fn engine_loop(session: &mut DebugSession, rx: Receiver<Request>) {
    for (cmd, reply) in rx {
        let _ = reply.send(session.handle(cmd));
    }
}

/// Does the request line start with `GET /ws`?
fn is_websocket(stream: &TcpStream) -> io::Result<bool> {
    const WANT: &[u8] = b"GET /ws";
    let mut buf = [0u8; 8];
    stream.set_read_timeout(Some(Duration::from_secs(10)))?;
    for _ in 0..100 {
        let n = stream.peek(&mut buf)?;
        if n == 0 {
            return Ok(false);
        }
        if n > WANT.len() || !WANT.starts_with(&buf[..n.min(WANT.len())]) {
            return Ok(buf[..n].starts_with(WANT) && matches!(buf.get(WANT.len()), Some(b' ' | b'?' | b'/')));
        }
        thread::sleep(Duration::from_millis(5));
    }
    Ok(false)
}

fn handle_connection(
    mut stream: TcpStream,
    engine: Sender<Request>,
    busy: Arc<AtomicBool>,
    assets: Option<&std::path::Path>,
) -> Result<(), Box<dyn std::error::Error>> {
    if !is_websocket(&stream)? {
        http::serve(&mut stream, assets)?;
        return Ok(());
    }
    stream.set_read_timeout(None)?;
    let mut ws = tungstenite::accept(stream)?;
    if busy.swap(true, Ordering::SeqCst) {
        refuse(&mut ws);
        return Ok(());
    }
    let result = client_loop(&mut ws, &engine);
    busy.store(false, Ordering::SeqCst);
    result
}

struct ClientGone;

fn ask(engine: &Sender<Request>, cmd: CommandMessage) -> Result<ServerMessage, ClientGone> {
    let (tx, rx) = mpsc::channel();
    engine.send((cmd, tx)).map_err(|_| ClientGone)?;
    rx.recv().map_err(|_| ClientGone)
}

fn client_loop(ws: &mut WebSocket<TcpStream>, engine: &Sender<Request>) -> Result<(), Box<dyn std::error::Error>> {
    let Ok(first) = ask(engine, CommandMessage::Status) else {
        return Ok(());
    };
    ws.send(Message::text(first.encode()))?;
    loop {
        let msg = match ws.read() {
            Ok(m) => m,
            Err(tungstenite::Error::ConnectionClosed | tungstenite::Error::AlreadyClosed) => return Ok(()),
            Err(e) => return Err(e.into()),
        };
        let reply = match msg {
            Message::Text(text) => match CommandMessage::decode(text.as_str()) {
                Ok(cmd) => match ask(engine, cmd) {
                    Ok(r) => r,
                    Err(ClientGone) => return Ok(()),
                },
                Err(message) => ServerMessage::Error { message },
            },
            Message::Binary(_) => ServerMessage::Error {
                message: "commands are JSON text frames".into(),
            },
            Message::Close(_) => {
                let _ = ws.flush();
                return Ok(());
            }
            Message::Ping(_) | Message::Pong(_) | Message::Frame(_) => continue,
        };
        ws.send(Message::text(reply.encode()))?;
    }
}

/// Closes with 1013 (try again later) and drains until the peer agrees.
fn refuse(ws: &mut WebSocket<TcpStream>) {
    let _ = ws.get_ref().set_read_timeout(Some(Duration::from_secs(2)));
    let _ = ws.close(Some(CloseFrame {
        code: CloseCode::Again,
        reason: "another debugger client is connected".into(),
    }));
    while ws.read().is_ok() {}
}
