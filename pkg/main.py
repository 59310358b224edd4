from ntrace import create_app
from ntrace.config import get_config
import logging
import os

cfg = get_config()

# Configure logging
os.makedirs('logs', exist_ok=True)
logging.basicConfig(
    level=cfg.LOG_LEVEL,
    format=cfg.LOG_FORMAT,
    handlers=[
        logging.FileHandler('logs/ntrace.log'),
        logging.StreamHandler()
    ]
)

app = create_app()

if __name__ == '__main__':
    app.run(host='0.0.0.0', port=5000, debug=app.config.get('DEBUG', False))
