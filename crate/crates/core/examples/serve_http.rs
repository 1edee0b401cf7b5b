// Serve a model over HTTP on an ephemeral port and fetch the legend once.
//
// `cargo run --example serve_http`

use std::io::{Read, Write};
use std::net::TcpStream;
use std::sync::Arc;

use cadv::server::{http, Explorer};
use cadv::{analyze, AnalyzeConfig};

pub fn run_example() -> anyhow::Result<String> {
    let model = analyze(&AnalyzeConfig::new(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/sample")))?;
    let explorer = Arc::new(Explorer::new(model));
    let runtime = tokio::runtime::Runtime::new()?;
    let (stop, stopped) = tokio::sync::oneshot::channel::<()>();
    let listener = runtime.block_on(tokio::net::TcpListener::bind("127.0.0.1:0"))?;
    let addr = listener.local_addr()?;
    let server = runtime.spawn(http::serve(explorer, listener, async {
        let _ = stopped.await;
    }));
    println!("listening on http://{addr}");

    let mut stream = TcpStream::connect(addr)?;
    write!(stream, "GET /api/project HTTP/1.1\r\nHost: {addr}\r\nConnection: close\r\n\r\n")?;
    let mut reply = String::new();
    stream.read_to_string(&mut reply)?;
    println!("{}", reply.lines().next().unwrap_or(""));
    println!("{}", reply.split("\r\n\r\n").nth(1).unwrap_or(""));

    let _ = stop.send(());
    runtime.block_on(server)??;
    Ok(reply)
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    run_example().map(drop)
}
