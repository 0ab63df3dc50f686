"""HTML formatter for resolution reports"""
import re
import html
import markdown


class ProfessionalHTMLFormatter:
    """Markdown to styled HTML for the report command"""

    def __init__(self):
        self.markdown_processor = markdown.Markdown(
            extensions=['tables', 'toc', 'fenced_code', 'attr_list'],
            extension_configs={
                'toc': {'title': 'Contents'},
            }
        )

    def convert_markdown_to_html(self, content: str) -> str:
        """Convert markdown content to HTML"""
        self.markdown_processor.reset()
        html_content = self.markdown_processor.convert(content)
        return self._postprocess_html(html_content)

    def _postprocess_html(self, html_content: str) -> str:
        html_content = re.sub(r'<h1([^>]*)>', r'<h1\1 class="main-header">', html_content)
        html_content = re.sub(r'<h2([^>]*)>', r'<h2\1 class="section-header">', html_content)
        html_content = re.sub(r'<h3([^>]*)>', r'<h3\1 class="subsection-header">', html_content)
        html_content = re.sub(r'<table>', r'<table class="trace-table">', html_content)

        # Verdict badges
        html_content = re.sub(r'\b(PASS|FAIL)\b', r'<span class="verdict-\1">\1</span>', html_content)
        return html_content

    def create_professional_template(self, report_content: str, title: str) -> str:
        """Wrap converted content in a standalone HTML document"""
        escaped_title = html.escape(title)
        return f"""<!DOCTYPE html>
<html lang="en">
<head>
    <meta charset="UTF-8">
    <meta name="viewport" content="width=device-width, initial-scale=1.0">
    <title>Resolution report - {escaped_title}</title>
    <style>
        body {{
            font-family: -apple-system, BlinkMacSystemFont, 'Segoe UI', Roboto, sans-serif;
            line-height: 1.6;
            color: #1f2937;
            max-width: 1100px;
            margin: 0 auto;
            padding: 2rem;
        }}
        .main-header {{ color: #1e40af; border-bottom: 2px solid #1e40af; }}
        .section-header {{ color: #3730a3; margin-top: 2rem; }}
        .subsection-header {{ color: #475569; }}
        .trace-table {{ border-collapse: collapse; width: 100%; margin: 1rem 0; }}
        .trace-table th, .trace-table td {{ border: 1px solid #cbd5e1; padding: 0.4rem 0.6rem; text-align: left; }}
        .trace-table th {{ background: #eef2ff; }}
        pre {{ background: #f8fafc; padding: 1rem; overflow-x: auto; }}
        .verdict-PASS {{ color: #059669; font-weight: 600; }}
        .verdict-FAIL {{ color: #dc2626; font-weight: 600; }}
    </style>
</head>
<body>
    <div class="container">
        {report_content}
    </div>
</body>
</html>
"""
