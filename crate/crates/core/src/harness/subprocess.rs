use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::process::{Child, ChildStdin, ChildStdout, Command, Stdio};

use super::Classifier;
use crate::error::{Error, Result};

/// A classifier running in a child process.
///
/// Protocol, one exchange per image: the harness writes the absolute image
/// path followed by `\n` and flushes; the process answers with the label
/// followed by `\n`. Closing stdin signals the end of the run.
pub struct SubprocessClassifier {
    child: Child,
    stdin: Option<ChildStdin>,
    stdout: BufReader<ChildStdout>,
    program: String,
}

impl SubprocessClassifier {
    pub fn spawn(program: &str, args: &[String]) -> Result<Self> {
        let mut child = Command::new(program)
            .args(args)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::inherit())
            .spawn()
            .map_err(|e| Error::io(program, e))?;
        let stdin = child.stdin.take();
        let stdout = BufReader::new(child.stdout.take().expect("stdout is piped"));
        Ok(Self {
            child,
            stdin,
            stdout,
            program: program.to_string(),
        })
    }

    /// Closes stdin and waits for the process to exit.
    pub fn finish(mut self) -> Result<()> {
        drop(self.stdin.take());
        let status = self.child.wait().map_err(|e| Error::io(&self.program, e))?;
        if !status.success() {
            log::warn!("classifier process {} exited with {status}", self.program);
        }
        Ok(())
    }
}

impl Classifier for SubprocessClassifier {
    fn predict(&mut self, path: &Path) -> Result<String> {
        let fail = |message: String| Error::Adapter {
            path: path.to_path_buf(),
            message,
        };
        let stdin = self
            .stdin
            .as_mut()
            .ok_or_else(|| fail("classifier stdin already closed".into()))?;
        let mut request = path.as_os_str().to_string_lossy().into_owned();
        request.push('\n');
        stdin
            .write_all(request.as_bytes())
            .and_then(|_| stdin.flush())
            .map_err(|e| fail(format!("writing request: {e}")))?;
        let mut line = String::new();
        let n = self
            .stdout
            .read_line(&mut line)
            .map_err(|e| fail(format!("reading response: {e}")))?;
        if n == 0 {
            return Err(fail(format!("{} closed its output", self.program)));
        }
        Ok(line.trim_end_matches(['\n', '\r']).to_string())
    }
}

impl Drop for SubprocessClassifier {
    fn drop(&mut self) {
        if self.stdin.is_some() {
            drop(self.stdin.take());
            let _ = self.child.kill();
            let _ = self.child.wait();
        }
    }
}
