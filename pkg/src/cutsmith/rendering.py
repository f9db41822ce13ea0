import inspect
import logging
from typing import Any

from jinja2 import BaseLoader, Environment, StrictUndefined, meta, select_autoescape
from pydantic import BaseModel

logger = logging.getLogger(__name__)

LEDGER_TEXT = inspect.cleandoc("""
    flow calls: {{ ledger.calls }}, total instance edges: {{ ledger.total_instance_edges }}
""")

DEFAULT_TEMPLATE = inspect.cleandoc("""
    {{ command }}: {{ outcome | replace("_", " ") }}
    {% if message %}
    {{ message }}
    {% endif %}
    {% if kappa is not none %}
    kappa = {{ kappa }}
    {% endif %}
    {% if separator is not none %}
    separator ({{ separator | length }}): {{ separator | join(" ") }}
    {% endif %}
    {% if left is not none %}
    left ({{ left | length }}): {{ left | join(" ") }}
    right ({{ right | length }}): {{ right | join(" ") }}
    {% endif %}
    {% if terminals is not none %}
    new terminals ({{ terminals | length }}): {{ terminals | join(" ") }}
    {% endif %}
    {% if fallback_fired is not none %}
    halving fallback fired: {{ "yes" if fallback_fired else "no" }}
    {% endif %}
    {% if records is not none %}
    records: {{ records }}
    {% endif %}
""")


class Renderer:
    """
    Class used to render command results as text.
    """

    def __init__(self, template: str | None = None) -> None:
        """
        :param template: A jinja2 template rendered with the fields of a result as
                         context. Defaults to DEFAULT_TEMPLATE.
        """
        self.template = template or DEFAULT_TEMPLATE

        self._env = Environment(
            loader=BaseLoader(),
            autoescape=select_autoescape(default_for_string=False),
            undefined=StrictUndefined,
            trim_blocks=True,
            lstrip_blocks=True,
        )

        self._template_variables: set[str] | None = None

    @property
    def template_variables(self) -> set[str]:
        """
        The variables used in the template. This property is cached.
        """
        if self._template_variables is None:
            self._template_variables = meta.find_undeclared_variables(
                self._env.parse(self.template)
            )
        return self._template_variables

    def render(self, result: BaseModel | None = None, **kwargs: Any) -> str:
        """
        Render the template for a result.

        A ledger section is appended when the context carries a ledger and the
        template does not mention one itself.

        :param result: A model whose fields become the context.
        :param kwargs: Extra context, overriding the result's fields.
        :return: The rendered text, without a trailing newline.
        """
        context = result.model_dump() if result is not None else {}
        context.update(kwargs)

        template = self.template
        if context.get("ledger") is not None and "ledger" not in self.template_variables:
            template += f"\n{LEDGER_TEXT}"

        rendered = self._env.from_string(template).render(**context).rstrip("\n")
        logger.debug(f"Rendered result:\n{rendered}")

        return rendered
