import { enhanceAnnotationForm } from './annotate.js';
import { bookmarkClick } from './bookmark.js';
import { renderHighlights } from './highlights.js';
import { literalSearchBox } from './search.js';
function boot() {
    enhanceAnnotationForm(document);
    bookmarkClick(document);
    renderHighlights(document);
    literalSearchBox(document);
}
if (document.readyState === 'loading') {
    document.addEventListener('DOMContentLoaded', boot);
}
else {
    boot();
}
