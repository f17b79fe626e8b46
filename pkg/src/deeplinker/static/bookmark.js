export function bookmarkClick(doc, fetchFn = fetch) {
    const button = doc.getElementById('bookmark');
    const form = button?.closest('form') ?? null;
    if (!button || !form) {
        return;
    }
    form.addEventListener('submit', (event) => {
        event.preventDefault();
        if (button.dataset.bookmarked === 'true') {
            return; // already stored; the server dedupes anyway
        }
        const body = new URLSearchParams();
        for (const field of Array.from(form.elements)) {
            const input = field;
            if (input.name) {
                body.set(input.name, input.value);
            }
        }
        fetchFn(form.getAttribute('action') ?? '/annotations', {
            method: 'POST',
            headers: { 'Content-Type': 'application/x-www-form-urlencoded' },
            body: body.toString(),
        })
            .then((resp) => {
            if (resp.ok || resp.status === 303) {
                button.dataset.bookmarked = 'true';
                button.textContent = 'Bookmarked';
            }
        })
            .catch(() => {
            // state unchanged on failure
            button.textContent = 'Bookmark (failed, retry)';
        });
    });
}
