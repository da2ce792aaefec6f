"""Package version

`git describe --tags HEAD` is used when this file lives in its own
git checkout; otherwise the version saved in "_version_save.py" at
build time, and finally a static fallback.
"""
import os
import subprocess

#: Used if neither git nor a saved version are available
FALLBACK_VERSION = "0.1.0"


def git_describe():
    """Output of `git describe --tags HEAD` or "" on failure"""
    ourdir = os.path.dirname(os.path.abspath(__file__))
    env = {k: os.environ[k] for k in ("SYSTEMROOT", "PATH")
           if k in os.environ}
    env.update(LANGUAGE="C", LANG="C", LC_ALL="C")
    try:
        # only trust git if this file is tracked one level below the root
        loc = subprocess.run(["git", "ls-files", "--full-name", __file__],
                             cwd=ourdir, env=env, capture_output=True,
                             check=False).stdout.decode().strip()
        if loc.count("/") != 1:
            return ""
        out = subprocess.run(["git", "describe", "--tags", "HEAD"],
                             cwd=ourdir, env=env, capture_output=True,
                             check=False)
    except OSError:
        return ""
    return out.stdout.decode("ascii", errors="ignore").strip()


def load_version():
    try:
        from ._version_save import longversion
    except ImportError:
        return ""
    return longversion


longversion = git_describe() or load_version() or FALLBACK_VERSION
# PEP 440-conform development version
version = ".post".join(longversion.split("-")[:2])
