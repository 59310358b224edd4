import logging

from flask import Flask, jsonify
from flask_limiter import Limiter
from flask_limiter.util import get_remote_address

__version__ = '0.1.0'

logger = logging.getLogger(__name__)

limiter = Limiter(
    key_func=get_remote_address,
    default_limits=["200 per day", "50 per hour"]
)


def create_app(config_name=None):
    """Build the JSON API application"""
    app = Flask(__name__)

    from ntrace.config import get_config
    cfg = get_config(config_name)
    app.config.from_object(cfg)
    app.json.sort_keys = True

    limiter.init_app(app)

    from ntrace.api_routes import api_v1_bp
    app.register_blueprint(api_v1_bp, url_prefix='/api/v1')

    @app.route('/')
    def index():
        return jsonify({'name': 'ntrace', 'version': __version__, 'api': '/api/v1'})

    logger.info(f'ntrace API created with {cfg.__name__}')
    return app
