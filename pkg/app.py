#!/usr/bin/env python3
"""
TraceRing - Main entry point for hosted deployments

This root-level app.py imports and runs the web workbench from src/web/web_app.py.
"""

from src.core.config import Config
from src.web.web_app import create_demo

if __name__ == "__main__":
    demo = create_demo()
    demo.launch(
        server_name="0.0.0.0",
        server_port=Config.PORT,
        show_error=True,
        share=Config.SHARE
    )
